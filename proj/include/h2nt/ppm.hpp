#ifndef H2NT_PPM_HPP
#define H2NT_PPM_HPP

#include <cstdint>

#include "h2nt/graph.hpp"
#include "h2nt/sym_matrix.hpp"

namespace h2nt {

// Planted partition parameters: `clusters` blocks of `nodes_per_cluster`
// nodes, within-cluster weight/probability `within`, cross-cluster `cross`.
// cross < within is enforced; cross == within is admitted only through the
// explicit diagnostic switch used by the lemma lab.
struct PpmParams {
    int nodes_per_cluster;
    int clusters;
    double within;
    double cross;

    PpmParams(int m, int r, double p, double q, bool allow_equal = false);

    int node_count() const { return nodes_per_cluster * clusters; }
    int cluster_of(int node) const { return node / nodes_per_cluster; }
};

// Unweighted sample: each within-cluster pair is an edge with probability
// `within`, each cross-cluster pair with probability `cross`. Node i belongs
// to cluster i / nodes_per_cluster; external ids are identity.
Graph sample_ppm(const PpmParams& params, std::uint64_t seed);

// Exact fully-connected expectation matrix: `within` on all same-cluster
// pairs including the diagonal, `cross` elsewhere. The full-block diagonal is
// what makes the order-l proximity gap equal m^(l-1) (p-q)^l exactly.
SymMatrix expected_ppm_matrix(const PpmParams& params);

}  // namespace h2nt

#endif
