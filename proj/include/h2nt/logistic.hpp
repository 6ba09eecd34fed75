#ifndef H2NT_LOGISTIC_HPP
#define H2NT_LOGISTIC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "h2nt/embedding.hpp"

namespace h2nt {

// L2-regularized binary logistic loss over rows of X (m x d, row-major) with
// labels y in {0,1}. Parameters wb = (w_1..w_d, b); the intercept is not
// regularized. Returns the loss and fills grad (d+1 entries) when non-null.
double binary_logistic_loss_grad(std::span<const double> x, std::span<const int> y, int m, int d,
                                 std::span<const double> wb, double l2, std::span<double> grad);

struct LogisticModel {
    std::vector<double> w;
    double b = 0.0;
};

// Full-batch gradient descent with a guaranteed-descent step (inverse
// Lipschitz bound); stops on gradient norm <= grad_tol or max_iter.
LogisticModel train_binary_logistic(std::span<const double> x, std::span<const int> y, int m, int d,
                                    double l2, int max_iter = 500, double grad_tol = 1e-6);

struct OneVsAllModel {
    std::vector<int> classes;  // class label per binary model
    std::vector<LogisticModel> models;
    int dim = 0;

    int predict(const double* row) const;
};

struct ClassifyResult {
    double accuracy = 0.0;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::vector<int> dropped_classes;  // present in data, absent from the training split
};

// Seeded uniform train/test split of the embedding rows, one-vs-all training,
// argmax prediction, held-out accuracy. labels[i] belongs to row i.
ClassifyResult classify_nodes(const Embedding& emb, const std::vector<int>& labels,
                              double train_ratio, double l2, std::uint64_t seed,
                              int max_iter = 500, double grad_tol = 1e-6);

}  // namespace h2nt

#endif
