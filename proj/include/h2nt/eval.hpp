#ifndef H2NT_EVAL_HPP
#define H2NT_EVAL_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "h2nt/embedding.hpp"
#include "h2nt/graph.hpp"
#include "h2nt/logistic.hpp"
#include "h2nt/motif.hpp"
#include "h2nt/sgns.hpp"
#include "h2nt/spectral.hpp"

namespace h2nt {

struct MotifEvalSpec {
    int n_test_triangles = 100;
    int negative_ratio = 10;
    int n_p_max = 0;  // 0 -> all scored triples
    std::uint64_t seed = 0;
};

struct EvalReport {
    std::vector<double> precision_curve;  // precision@N for N = 1..n_p_max
    double mean_precision = 0.0;
    double accuracy = 0.0;
    std::map<std::string, double> timing;       // seconds per stage
    std::map<std::string, std::string> config;  // flag echo
    std::string task;                           // "motif" or "classify"

    // Timing is wall-clock metadata; drop it when comparing reports for
    // reproducibility.
    std::string to_json(bool include_timing = true) const;
    static EvalReport from_json(const std::string& text);
    std::string to_csv() const;
};

using Triple = std::array<int, 3>;

// Removes n_test_triangles distinct uniformly sampled triangles (all three
// edges each; shared edges once) and returns the training graph plus the
// removed triples as positives.
std::pair<Graph, std::vector<Triple>> split_motif_testset(const Graph& g, const MotifEvalSpec& spec);

// Distinct node triples that do not form a triangle in the original graph;
// rejection sampling capped at 1000 * count attempts.
std::vector<Triple> sample_negative_triples(const Graph& g, std::size_t count, std::uint64_t seed);

// Mean pair score over a triple's three pairs.
std::vector<double> score_triples(const Embedding& emb, const std::vector<Triple>& triples,
                                  bool plain_dot = false);

struct PrecisionResult {
    std::vector<double> curve;
    double mean = 0.0;
};

// Descending stable sort of the mixed score lists (positives keep priority on
// ties); precision@N for N = 1..n_p_max and the mean over N.
PrecisionResult precision_at(const std::vector<double>& scores_pos,
                             const std::vector<double>& scores_neg, int n_p_max);

enum class Backend { spectral, walk };

struct PipelineConfig {
    double lambda = 0.5;
    Backend backend = Backend::spectral;
    SpectralConfig spectral;
    WalkConfig walk;
    SgnsConfig sgns;
    bool plain_scores = false;  // score with the plain dot product instead of F-signs
    int threads = 1;
};

// transform + chosen backend on a graph.
Embedding embed_pipeline(const Graph& g, const PipelineConfig& cfg);

// Full motif-prediction protocol, precision curves averaged over `repeats`
// independent seeded runs.
EvalReport run_motif_eval(const Graph& g, const PipelineConfig& cfg, const MotifEvalSpec& spec,
                          int repeats = 5);

// Node/role classification: embed once, average accuracy over `repeats`
// seeded splits.
EvalReport run_classification_eval(const Graph& g, const std::vector<int>& labels,
                                   const PipelineConfig& cfg, double train_ratio, double l2,
                                   int repeats, std::uint64_t seed);

// Classification on a precomputed embedding (external embedder entry point).
EvalReport run_classification_eval(const Embedding& emb, const std::vector<int>& labels,
                                   double train_ratio, double l2, int repeats, std::uint64_t seed);

}  // namespace h2nt

#endif
