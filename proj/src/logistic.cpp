#include "h2nt/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "h2nt/util.hpp"

namespace h2nt {

namespace {

double stable_log1pexp(double z) {
    // log(1 + exp(z)) without overflow
    if (z > 0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

}  // namespace

double binary_logistic_loss_grad(std::span<const double> x, std::span<const int> y, int m, int d,
                                 std::span<const double> wb, double l2, std::span<double> grad) {
    if (static_cast<int>(wb.size()) != d + 1)
        throw validation_error("parameter vector must have d+1 entries");
    if (!grad.empty() && static_cast<int>(grad.size()) != d + 1)
        throw validation_error("gradient vector must have d+1 entries");

    if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0.0;
    for (int i = 0; i < m; ++i) {
        const double* row = x.data() + static_cast<std::size_t>(i) * d;
        double z = wb[d];
        for (int k = 0; k < d; ++k) z += wb[k] * row[k];
        // y=1: log(1+exp(-z)); y=0: log(1+exp(z))
        loss += y[i] ? stable_log1pexp(-z) : stable_log1pexp(z);
        if (!grad.empty()) {
            double sigma = 1.0 / (1.0 + std::exp(-z));
            double diff = sigma - y[i];
            for (int k = 0; k < d; ++k) grad[k] += diff * row[k];
            grad[d] += diff;
        }
    }
    for (int k = 0; k < d; ++k) {
        loss += 0.5 * l2 * wb[k] * wb[k];
        if (!grad.empty()) grad[k] += l2 * wb[k];
    }
    return loss;
}

LogisticModel train_binary_logistic(std::span<const double> x, std::span<const int> y, int m, int d,
                                    double l2, int max_iter, double grad_tol) {
    // Lipschitz bound for the gradient: 1/4 * ||X~||_F^2 + l2 with the
    // intercept treated as a constant-1 feature.
    double frob = 0.0;
    for (int i = 0; i < m; ++i) {
        const double* row = x.data() + static_cast<std::size_t>(i) * d;
        double sq = 1.0;
        for (int k = 0; k < d; ++k) sq += row[k] * row[k];
        frob += sq;
    }
    double step = 1.0 / (0.25 * frob + l2 + 1e-12);

    std::vector<double> wb(d + 1, 0.0);
    std::vector<double> grad(d + 1, 0.0);
    for (int iter = 0; iter < max_iter; ++iter) {
        binary_logistic_loss_grad(x, y, m, d, wb, l2, grad);
        double gnorm = 0.0;
        for (double g : grad) gnorm += g * g;
        if (std::sqrt(gnorm) <= grad_tol) break;
        for (int k = 0; k <= d; ++k) wb[k] -= step * grad[k];
    }
    LogisticModel model;
    model.w.assign(wb.begin(), wb.begin() + d);
    model.b = wb[d];
    return model;
}

int OneVsAllModel::predict(const double* row) const {
    int best = classes.front();
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < models.size(); ++c) {
        double z = models[c].b;
        for (int k = 0; k < dim; ++k) z += models[c].w[k] * row[k];
        if (z > best_score) {
            best_score = z;
            best = classes[c];
        }
    }
    return best;
}

ClassifyResult classify_nodes(const Embedding& emb, const std::vector<int>& labels,
                              double train_ratio, double l2, std::uint64_t seed,
                              int max_iter, double grad_tol) {
    if (static_cast<int>(labels.size()) != emb.n)
        throw validation_error("labels must cover all embedding rows");
    if (!(train_ratio > 0.0 && train_ratio < 1.0))
        throw validation_error("train_ratio must lie strictly between 0 and 1");
    if (emb.n < 2) throw validation_error("need at least two nodes to split");

    std::vector<int> order(emb.n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(mix_seed(seed, 0x51EE7));
    for (int i = emb.n - 1; i > 0; --i) std::swap(order[i], order[uniform_below(rng, i + 1)]);

    std::size_t train_size = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(train_ratio * emb.n)), 1, emb.n - 1);
    std::vector<int> train_idx(order.begin(), order.begin() + train_size);
    std::vector<int> test_idx(order.begin() + train_size, order.end());

    std::map<int, int> train_class_counts;
    for (int i : train_idx) ++train_class_counts[labels[i]];

    ClassifyResult result;
    result.train_size = train_idx.size();
    result.test_size = test_idx.size();
    for (int label : std::set<int>(labels.begin(), labels.end()))
        if (!train_class_counts.count(label)) result.dropped_classes.push_back(label);

    std::vector<double> train_x(train_idx.size() * emb.d);
    for (std::size_t i = 0; i < train_idx.size(); ++i)
        std::copy(emb.row(train_idx[i]), emb.row(train_idx[i]) + emb.d,
                  train_x.begin() + i * emb.d);

    OneVsAllModel ova;
    ova.dim = emb.d;
    std::vector<int> binary(train_idx.size());
    for (const auto& [label, count] : train_class_counts) {
        (void)count;
        for (std::size_t i = 0; i < train_idx.size(); ++i)
            binary[i] = labels[train_idx[i]] == label ? 1 : 0;
        ova.classes.push_back(label);
        ova.models.push_back(train_binary_logistic(train_x, binary,
                                                   static_cast<int>(train_idx.size()), emb.d, l2,
                                                   max_iter, grad_tol));
    }

    std::size_t correct = 0;
    for (int i : test_idx)
        if (ova.predict(emb.row(i)) == labels[i]) ++correct;
    result.accuracy = test_idx.empty() ? 0.0 : static_cast<double>(correct) / test_idx.size();
    return result;
}

}  // namespace h2nt
