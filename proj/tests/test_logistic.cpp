#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "h2nt/logistic.hpp"
#include "h2nt/util.hpp"
#include "oracles.hpp"

using namespace h2nt;

namespace {

Embedding embedding_of(int n, int d, const std::vector<double>& values) {
    Embedding e;
    e.n = n;
    e.d = d;
    e.values = values;
    e.ids.resize(n);
    for (int i = 0; i < n; ++i) e.ids[i] = i;
    return e;
}

}  // namespace

TEST_CASE("analytic gradient matches central differences") {
    std::mt19937_64 rng(1123);
    for (int trial = 0; trial < 50; ++trial) {
        int m = 3 + trial % 10;
        int d = 1 + trial % 5;
        std::vector<double> x(static_cast<std::size_t>(m) * d);
        std::vector<int> y(m);
        for (double& v : x) v = 2.0 * uniform01(rng) - 1.0;
        for (int& v : y) v = uniform01(rng) < 0.5 ? 0 : 1;
        double l2 = 0.1 + 2.0 * uniform01(rng);
        std::vector<double> wb(d + 1);
        for (double& v : wb) v = uniform01(rng) - 0.5;

        std::vector<double> grad(d + 1);
        binary_logistic_loss_grad(x, y, m, d, wb, l2, grad);
        auto fd = oracle::central_diff(
            [&](const std::vector<double>& p) {
                return binary_logistic_loss_grad(x, y, m, d, p, l2, {});
            },
            wb, 1e-6);
        for (int k = 0; k <= d; ++k)
            CHECK(std::fabs(grad[k] - fd[k]) <= 1e-5 * std::max(1.0, std::fabs(fd[k])));
    }
}

TEST_CASE("descent never increases the loss") {
    std::mt19937_64 rng(88);
    for (int trial = 0; trial < 10; ++trial) {
        int m = 20, d = 4;
        std::vector<double> x(m * d);
        std::vector<int> y(m);
        for (double& v : x) v = 4.0 * uniform01(rng) - 2.0;
        for (int& v : y) v = uniform01(rng) < 0.5 ? 0 : 1;
        double l2 = 1.0;

        std::vector<double> wb(d + 1, 0.0);
        double initial = binary_logistic_loss_grad(x, y, m, d, wb, l2, {});
        auto model = train_binary_logistic(x, y, m, d, l2);
        std::vector<double> trained(model.w);
        trained.push_back(model.b);
        double final_loss = binary_logistic_loss_grad(x, y, m, d, trained, l2, {});
        CHECK(final_loss <= initial);
    }
}

TEST_CASE("one-hot class indicators separate perfectly") {
    int n = 30, k = 3;
    std::vector<double> values(static_cast<std::size_t>(n) * k, 0.0);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
        labels[i] = i % k;
        values[static_cast<std::size_t>(i) * k + labels[i]] = 1.0;
    }
    auto emb = embedding_of(n, k, values);
    auto res = classify_nodes(emb, labels, 0.5, 1.0, 7);
    CHECK(res.accuracy == 1.0);
    CHECK(res.dropped_classes.empty());
}

TEST_CASE("constant features give coin-flip accuracy on balanced classes") {
    int n = 200;
    std::vector<double> values(static_cast<std::size_t>(n) * 2, 1.0);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = i % 2;
    auto emb = embedding_of(n, 2, values);
    double acc = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed)
        acc += classify_nodes(emb, labels, 0.3, 1.0, seed).accuracy;
    acc /= 5;
    CHECK(std::fabs(acc - 0.5) < 0.1);
}

TEST_CASE("classes absent from the training split are dropped") {
    int n = 10;
    std::vector<double> values(static_cast<std::size_t>(n) * 2, 0.0);
    std::vector<int> labels(n, 0);
    labels[9] = 99;  // singleton class
    for (int i = 0; i < n; ++i) values[i * 2] = labels[i] == 0 ? 1.0 : -1.0;
    auto emb = embedding_of(n, 2, values);
    // find a seed that puts node 9 in the test split
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto res = classify_nodes(emb, labels, 0.3, 1.0, seed);
        if (!res.dropped_classes.empty()) {
            CHECK(res.dropped_classes == std::vector<int>{99});
            return;
        }
    }
    FAIL("no split left the singleton class out of training");
}

TEST_CASE("split size bookkeeping and validation") {
    auto emb = embedding_of(10, 1, std::vector<double>(10, 0.0));
    std::vector<int> labels(10, 0);
    labels[1] = 1;
    auto res = classify_nodes(emb, labels, 0.2, 1.0, 3);
    CHECK(res.train_size == 2);
    CHECK(res.test_size == 8);
    CHECK_THROWS_AS(classify_nodes(emb, labels, 0.0, 1.0, 3), validation_error);
    CHECK_THROWS_AS(classify_nodes(emb, labels, 1.0, 1.0, 3), validation_error);
    CHECK_THROWS_AS(classify_nodes(emb, std::vector<int>(4, 0), 0.5, 1.0, 3), validation_error);
}
