#ifndef H2NT_WALK_HPP
#define H2NT_WALK_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "h2nt/sym_matrix.hpp"

namespace h2nt {

// Vose alias table: O(1) draws from a fixed discrete distribution.
class AliasTable {
public:
    AliasTable() = default;
    explicit AliasTable(const std::vector<double>& weights);

    int size() const { return static_cast<int>(prob_.size()); }
    bool empty() const { return prob_.empty(); }
    int sample(std::mt19937_64& rng) const;

private:
    std::vector<double> prob_;
    std::vector<int> alias_;
};

struct WalkConfig {
    int walks_per_node = 10;
    int walk_length = 40;  // nodes per walk
    std::uint64_t seed = 0;
    int threads = 1;
};

// Per-node neighbor samplers with probability Q(i,j) / sum_k Q(i,k); nodes
// with an all-zero row are dead.
struct TransitionTable {
    int dim = 0;
    std::vector<std::vector<int>> targets;
    std::vector<AliasTable> alias;
    std::vector<bool> dead;

    int sample_neighbor(int u, std::mt19937_64& rng) const {
        return targets[u][alias[u].sample(rng)];
    }
    int live_count() const;
};

TransitionTable build_transition(const SymMatrix& q);

using WalkCorpus = std::vector<std::vector<int>>;

// A single walk of `length` nodes from `start` (just the start token when the
// start is dead). RNG stream is the caller's.
std::vector<int> random_walk(const TransitionTable& t, int start, int length, std::mt19937_64& rng);

// walks_per_node rounds over all live nodes; start order is reshuffled every
// round, and each walk draws from its own (seed, round, node) stream so the
// corpus is reproducible and independent of the thread count.
WalkCorpus generate_walks(const TransitionTable& t, const WalkConfig& cfg);
WalkCorpus generate_walks(const SymMatrix& q, const WalkConfig& cfg);

// One walk per line, space-separated external ids.
std::string corpus_to_text(const WalkCorpus& corpus, const std::vector<long long>& ext_ids);

}  // namespace h2nt

#endif
