#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "h2nt/ppm.hpp"
#include "h2nt/sym_matrix.hpp"
#include "h2nt/util.hpp"
#include "oracles.hpp"

using namespace h2nt;

TEST_CASE("symmetric storage") {
    SymMatrix m(3);
    m.set(2, 0, 1.5);
    CHECK(m.at(0, 2) == 1.5);
    CHECK(m.at(2, 0) == 1.5);
    m.add(0, 2, 0.5);
    CHECK(m.at(2, 0) == 2.0);
    m.set(1, 1, 3.0);
    CHECK(m.at(1, 1) == 3.0);
    CHECK(m.stored(0, 2));
    CHECK_FALSE(m.stored(0, 1));
    CHECK_THROWS_AS(m.at(0, 3), validation_error);
}

TEST_CASE("max entry of an empty matrix is zero") {
    CHECK(SymMatrix(4).max_entry() == 0.0);
    SymMatrix m(2);
    m.set(0, 1, 7.0);
    CHECK(m.max_entry() == 7.0);
}

TEST_CASE("plus_scaled checks dimensions") {
    SymMatrix a(2), b(3);
    CHECK_THROWS_AS(a.plus_scaled(b, 1.0), validation_error);
}

TEST_CASE("row sums and matvec agree with the dense form") {
    auto m = oracle::random_symmetric(9, 42);
    auto dense = oracle::dense_of(m);
    auto sums = m.row_sums();
    std::vector<double> x(9), y(9);
    std::mt19937_64 rng(7);
    for (double& v : x) v = uniform01(rng);
    m.matvec(x.data(), y.data());
    for (int i = 0; i < 9; ++i) {
        double srow = 0.0, yrow = 0.0;
        for (int j = 0; j < 9; ++j) {
            srow += dense[i * 9 + j];
            yrow += dense[i * 9 + j] * x[j];
        }
        CHECK(sums[i] == doctest::Approx(srow).epsilon(1e-12));
        CHECK(y[i] == doctest::Approx(yrow).epsilon(1e-12));
    }
}

TEST_CASE("matrix power rejects order zero") {
    SymMatrix m(2);
    m.set(0, 1, 1.0);
    CHECK_THROWS_AS(matrix_power(m, 0), validation_error);
}

TEST_CASE("diagonal matrix is a fixed point of powers") {
    SymMatrix m(3);
    for (int i = 0; i < 3; ++i) m.set(i, i, 1.0);
    auto p = matrix_power(m, 5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(p.at(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("all-ones square") {
    SymMatrix m(2);
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) m.set(i, j, 1.0);
    auto p = matrix_power(m, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(p.at(i, j) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("ppm power gap matches the closed form") {
    auto p3 = matrix_power(expected_ppm_matrix(PpmParams(5, 2, 0.8, 0.2)), 3);
    CHECK(p3.at(0, 1) - p3.at(0, 5) == doctest::Approx(5.4).epsilon(1e-12));
}

TEST_CASE("dense and sparse power paths match naive multiplication") {
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial;
        auto m = oracle::random_symmetric(n, 900 + trial);
        for (int order : {1, 2, 3, 5}) {
            auto expected = oracle::naive_dense_power(m, order);
            auto dense = matrix_power(m, order);  // n << crossover: dense path
            auto sparse = matrix_power_with_crossover(m, order, 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double e = expected[static_cast<std::size_t>(i) * n + j];
                    CHECK(dense.at(i, j) == doctest::Approx(e).epsilon(1e-11));
                    CHECK(sparse.at(i, j) == doctest::Approx(e).epsilon(1e-11));
                }
        }
    }
}

TEST_CASE("powers of a sparse graph matrix stay symmetric") {
    auto g = oracle::random_graph(25, 0.2, 5, true);
    SymMatrix m(25);
    for (const auto& [u, v, w] : g.edges()) m.set(u, v, w);
    auto p = matrix_power_with_crossover(m, 4, 0);
    for (int i = 0; i < 25; ++i)
        for (int j = i + 1; j < 25; ++j) CHECK(p.at(i, j) == p.at(j, i));
}

TEST_CASE("same_support") {
    SymMatrix a(3), b(3);
    a.set(0, 1, 1.0);
    b.set(0, 1, 2.0);
    CHECK(a.same_support(b));
    b.set(1, 2, 0.0);  // structural zero still counts
    CHECK_FALSE(a.same_support(b));
}
