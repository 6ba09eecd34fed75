#ifndef H2NT_EMBEDDING_HPP
#define H2NT_EMBEDDING_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace h2nt {

struct EmbeddingMeta {
    std::string backend;  // "spectral" or "walk"
    double lambda = 0.0;
    int order = 0;
    std::vector<double> weights;
    std::uint64_t seed = 0;
    std::vector<int> f_signs;  // sign of F(lambda_k) per column, spectral only
    std::vector<int> dead_nodes;

    std::uint64_t config_hash() const;
};

// Dense n x d node representation, row-aligned with external ids.
struct Embedding {
    int n = 0;
    int d = 0;
    std::vector<double> values;  // row-major
    std::vector<long long> ids;  // external id per row
    EmbeddingMeta meta;

    double* row(int i) { return values.data() + static_cast<std::size_t>(i) * d; }
    const double* row(int i) const { return values.data() + static_cast<std::size_t>(i) * d; }
};

// Signed inner product consistent with sum_k F(lambda_k) u_k[i] u_k[j] when
// F-signs are present (spectral); plain dot product otherwise or on request.
double pair_score(const Embedding& emb, int i, int j, bool plain_dot = false);

// Text format: header "n d", then one "ext_id f1 ... fd" line per node with
// 9 significant digits.
std::string embedding_to_text(const Embedding& emb);
Embedding embedding_from_text(const std::string& text);
void save_embedding_file(const Embedding& emb, const std::filesystem::path& path);
Embedding load_embedding_file(const std::filesystem::path& path);

// Key-value JSON sidecar with backend, lambda, order, weights, seed, F-signs.
std::string meta_to_json(const Embedding& emb);
void save_meta_file(const Embedding& emb, const std::filesystem::path& path);

}  // namespace h2nt

#endif
