#ifndef H2NT_MOTIF_HPP
#define H2NT_MOTIF_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "h2nt/graph.hpp"
#include "h2nt/sym_matrix.hpp"

namespace h2nt {

struct TransformConfig {
    double lambda = 0.5;        // heterophily unification weight, >= 0
    bool keep_isolated = true;  // retain nodes outside every triangle as zero rows
    int threads = 1;
};

struct TransformResult {
    SymMatrix a_m;  // triangle counts per pair
    SymMatrix h;    // f_max - a_m on motif pairs, 0 elsewhere (stored on a_m's support)
    SymMatrix q;    // a_m + lambda * h
    long long max_motif_weight = 0;      // f_max(a_m)
    std::size_t motif_edge_count = 0;    // pairs contained in >= 1 triangle
    std::size_t dropped_edge_count = 0;  // input edges contained in no triangle
    long long triangle_count = 0;
    std::vector<int> nodes;  // matrix row -> original internal node id
    double elapsed_seconds = 0.0;
};

// A_M(i, j) = number of triangles of g containing the pair {i, j}; input
// weights are ignored for counting. Degree-ordered neighbor intersection,
// exact counts. With threads > 1 the result is bit-identical to sequential.
SymMatrix motif_adjacency(const Graph& g, int threads = 1);

// All triangles as sorted (a, b, c) triples in deterministic order.
std::vector<std::array<int, 3>> enumerate_triangles(const Graph& g);
long long count_triangles(const Graph& g);

// H = f_max - A_M wherever A_M > 0, else 0; returns (H, f_max). H keeps
// A_M's stored support so the two sparsity patterns stay comparable.
std::pair<SymMatrix, long long> heterophily_matrix(const SymMatrix& a_m);

// Q = A_M + lambda * H entrywise.
SymMatrix unify(const SymMatrix& a_m, const SymMatrix& h, double lambda);

TransformResult transform(const Graph& g, const TransformConfig& cfg = {});

struct SparsityStats {
    std::size_t graph_edges = 0;
    std::size_t motif_edges = 0;
    double ratio = 0.0;  // motif_edges / graph_edges, 0 for an empty graph
    long long triangles = 0;
    double seconds = 0.0;
};

SparsityStats sparsity_stats(const Graph& g, const TransformResult& res);

}  // namespace h2nt

#endif
