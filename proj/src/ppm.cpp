#include "h2nt/ppm.hpp"

#include <random>

#include "h2nt/util.hpp"

namespace h2nt {

PpmParams::PpmParams(int m, int r, double p, double q, bool allow_equal)
    : nodes_per_cluster(m), clusters(r), within(p), cross(q) {
    if (m < 2) throw validation_error("nodes per cluster must be >= 2");
    if (r < 2) throw validation_error("cluster count must be >= 2");
    if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0)
        throw validation_error("ppm weights must lie in [0, 1]");
    if (q > p || (!allow_equal && q == p))
        throw validation_error("ppm requires cross < within");
}

Graph sample_ppm(const PpmParams& params, std::uint64_t seed) {
    int n = params.node_count();
    Graph g(n);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double prob = params.cluster_of(i) == params.cluster_of(j) ? params.within : params.cross;
            if (uniform01(rng) < prob) g.add_edge(i, j, 1.0);
        }
    }
    return g;
}

SymMatrix expected_ppm_matrix(const PpmParams& params) {
    int n = params.node_count();
    SymMatrix mat(n);
    for (int i = 0; i < n; ++i) {
        mat.set(i, i, params.within);
        for (int j = i + 1; j < n; ++j) {
            double v = params.cluster_of(i) == params.cluster_of(j) ? params.within : params.cross;
            mat.set(i, j, v);
        }
    }
    return mat;
}

}  // namespace h2nt
