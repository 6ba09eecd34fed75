#ifndef H2NT_SPECTRAL_HPP
#define H2NT_SPECTRAL_HPP

#include <vector>

#include "h2nt/embedding.hpp"
#include "h2nt/sym_matrix.hpp"

namespace h2nt {

struct SpectralConfig {
    int dim = 16;                 // embedding dimension d
    int order = 3;                // highest proximity order l
    std::vector<double> weights;  // w_1..w_l; empty -> 0.1^i
    double eig_tol = 1e-8;
    int max_iter = 1000;  // Lanczos steps per restart pass
};

struct EigenPairs {
    std::vector<double> values;                // sorted by |lambda| descending
    std::vector<std::vector<double>> vectors;  // vectors[k] has n entries
};

// Top-d eigenpairs by |lambda| of a symmetric matrix: Lanczos with full
// reorthogonalization and deflated restarts. Residual of every returned pair
// satisfies ||M u - lambda u|| <= tol * max(1, |lambda|); vectors are
// orthonormal with the first nonzero component positive.
EigenPairs top_eigenpairs(const SymMatrix& mat, int d, double tol = 1e-8, int max_iter = 1000);

// F(lambda) = sum_i w_i lambda^i applied per eigenvalue.
std::vector<double> reweight(const std::vector<double>& values, const std::vector<double>& weights);

std::vector<double> default_hop_weights(int order);  // w_i = 0.1^i

// Eigen-reweighted embedding: column k is u_k * sqrt(|F(lambda_k)|), the sign
// of F(lambda_k) goes to the meta so pair scores stay exact; rows of nodes
// with an all-zero matrix row are zeroed.
Embedding embed_spectral(const SymMatrix& q, const SpectralConfig& cfg,
                         const std::vector<long long>& ids = {});

}  // namespace h2nt

#endif
