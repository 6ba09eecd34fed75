#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "h2nt/lemma.hpp"
#include "h2nt/util.hpp"

using namespace h2nt;

TEST_CASE("proximity gap closed form on pinned points") {
    auto report = verify_lemma1({PpmParams(2, 2, 1.0, 0.0)}, 2);
    REQUIRE(report.checks.size() == 2);
    CHECK(report.checks[0].measured == doctest::Approx(1.0).epsilon(1e-12));  // l=1: p-q
    CHECK(report.checks[1].measured == doctest::Approx(2.0).epsilon(1e-12));  // l=2: m(p-q)^2
    CHECK(report.pass);

    auto r53 = verify_lemma1({PpmParams(5, 2, 0.8, 0.2)}, 3);
    CHECK(r53.checks[2].predicted == doctest::Approx(5.4).epsilon(1e-15));
    CHECK(r53.checks[2].measured == doctest::Approx(5.4).epsilon(1e-10));
    CHECK(r53.pass);
}

TEST_CASE("first order gap is always p minus q") {
    for (const auto& params : default_lemma_grid()) {
        auto report = verify_lemma1({params}, 1);
        CHECK(report.checks[0].measured ==
              doctest::Approx(params.within - params.cross).epsilon(1e-12));
    }
}

TEST_CASE("full default grid passes at 1e-9") {
    auto report = verify_lemma1(default_lemma_grid(), 6);
    CHECK(report.pass);
    CHECK(report.max_rel_err <= 1e-9);
    CHECK(report.checks.size() == 24 * 6);
    for (const auto& c : report.checks) CHECK(c.measured > 0);
}

TEST_CASE("tightening the tolerance beyond double precision fails the report") {
    auto report = verify_lemma1(default_lemma_grid(), 6, 1e-18);
    CHECK_FALSE(report.pass);
}

TEST_CASE("cluster symmetry is exact for expected powers") {
    auto report = verify_symmetry({PpmParams(3, 3, 0.7, 0.1)}, 4);
    CHECK(report.pass);
    CHECK(report.max_abs_err <= 1e-12);

    auto grid_report = verify_symmetry(default_lemma_grid(), 6);
    CHECK(grid_report.pass);
}

TEST_CASE("power matrices are invariant under within-cluster permutations") {
    PpmParams params(3, 2, 0.8, 0.3);
    auto power = matrix_power(expected_ppm_matrix(params), 4);
    // swap nodes 0 and 2 (both in cluster 0)
    auto perm = [](int v) { return v == 0 ? 2 : (v == 2 ? 0 : v); };
    for (int i = 0; i < params.node_count(); ++i)
        for (int j = 0; j < params.node_count(); ++j)
            CHECK(power.at(perm(i), perm(j)) == power.at(i, j));
}

TEST_CASE("random walk normalization is stochastic and keeps the ordering") {
    PpmParams params(4, 2, 0.6, 0.1);
    auto base = expected_ppm_matrix(params);
    auto sums = base.row_sums();
    auto stochastic = base.scaled(1.0 / sums[0]);
    auto norm_sums = stochastic.row_sums();
    for (double s : norm_sums) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));

    auto report = verify_rw_inequality({params}, 6);
    CHECK(report.pass);
    CHECK(report.empirical);
    REQUIRE(report.checks.size() == 6);
    // mixing: the gap decays toward stationarity
    CHECK(report.checks[5].measured < report.checks[0].measured);
    CHECK(report.checks[5].measured > 0);
}

TEST_CASE("rw ordering holds across the default grid") {
    CHECK(verify_rw_inequality(default_lemma_grid(), 6).pass);
}

TEST_CASE("triangle expectation closed forms") {
    auto report = verify_triangle_expectations(PpmParams(10, 2, 0.5, 0.1), 300, 4);
    REQUIRE(report.checks.size() == 3);
    CHECK(report.checks[0].predicted == doctest::Approx(2.1).epsilon(1e-15));
    CHECK(report.checks[1].predicted == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(report.pass);
    CHECK(report.checks[2].measured > 0);  // homophily gap
}

TEST_CASE("monte carlo error shrinks with more samples") {
    PpmParams params(10, 2, 0.5, 0.1);
    auto err_of = [&](int samples, std::uint64_t seed) {
        auto rep = verify_triangle_expectations(params, samples, seed, 1.0);
        return (rep.checks[0].rel_err + rep.checks[1].rel_err) / 2;
    };
    double small = 0, large = 0;
    for (std::uint64_t s = 0; s < 3; ++s) {
        small += err_of(100, s);
        large += err_of(1000, 100 + s);
    }
    CHECK(large < small);
}

TEST_CASE("p equal q runs as a diagnostic with a vanishing gap") {
    auto report = verify_triangle_expectations(PpmParams(10, 2, 0.3, 0.3, true), 200, 8);
    CHECK(report.pass);  // diagnostics never gate
    for (const auto& c : report.checks) CHECK(c.diagnostic);
    CHECK(std::fabs(report.checks[2].measured) < 0.25);
}

TEST_CASE("sampled powers track the expectation powers as a diagnostic") {
    auto report = sampled_power_diagnostic(PpmParams(5, 2, 0.6, 0.1), 4, 150, 12);
    CHECK(report.pass);  // diagnostics never gate
    CHECK(report.empirical);
    REQUIRE(report.checks.size() == 8);
    for (const auto& c : report.checks) CHECK(c.diagnostic);
    // l = 1 has no reused edges, so sampling and expectation agree closely
    CHECK(report.checks[0].rel_err < 0.15);
    CHECK(report.checks[1].rel_err < 0.3);
    // the independence approximation drifts at higher orders but stays same-scale
    for (const auto& c : report.checks) CHECK(c.rel_err < 1.0);
}

TEST_CASE("reports serialize with labels and errors") {
    auto report = verify_lemma1({PpmParams(2, 2, 0.9, 0.1)}, 2);
    auto json = report.to_json();
    CHECK(json.find("\"lemma\": \"proximity-gap\"") != std::string::npos);
    CHECK(json.find("m=2 r=2 p=0.9 q=0.1 l=1") != std::string::npos);
    auto table = report.to_table();
    CHECK(table.find("PASS") != std::string::npos);
}

TEST_CASE("default grid covers the documented ranges") {
    auto grid = default_lemma_grid();
    CHECK(grid.size() == 24);
    for (const auto& p : grid) {
        CHECK((p.nodes_per_cluster == 2 || p.nodes_per_cluster == 5 || p.nodes_per_cluster == 10));
        CHECK((p.clusters == 2 || p.clusters == 3));
        CHECK(p.cross < p.within);
    }
}
