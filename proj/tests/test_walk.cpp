#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "h2nt/motif.hpp"
#include "h2nt/util.hpp"
#include "h2nt/walk.hpp"
#include "oracles.hpp"

using namespace h2nt;

namespace {

SymMatrix shared_edge_q(double lambda) {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    TransformConfig cfg;
    cfg.lambda = lambda;
    return transform(g, cfg).q;
}

}  // namespace

TEST_CASE("single neighbor is sampled with probability one") {
    SymMatrix q(2);
    q.set(0, 1, 2.5);
    auto t = build_transition(q);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) CHECK(t.sample_neighbor(0, rng) == 1);
    CHECK_FALSE(t.dead[0]);
    CHECK(t.live_count() == 2);
}

TEST_CASE("alias sampling reproduces the weight ratio") {
    SymMatrix q(3);
    q.set(0, 1, 2.0);
    q.set(0, 2, 1.0);
    auto t = build_transition(q);
    std::mt19937_64 rng(99);
    long long hits1 = 0;
    const int draws = 1000000;
    for (int i = 0; i < draws; ++i)
        if (t.sample_neighbor(0, rng) == 1) ++hits1;
    double f1 = static_cast<double>(hits1) / draws;
    CHECK(std::fabs(f1 - 2.0 / 3.0) < 0.002);
    CHECK(std::fabs((1.0 - f1) - 1.0 / 3.0) < 0.002);
}

TEST_CASE("zero rows are dead") {
    SymMatrix q(3);
    q.set(0, 1, 1.0);
    auto t = build_transition(q);
    CHECK(t.dead[2]);
    CHECK_FALSE(t.dead[0]);
    CHECK(t.targets[2].empty());
}

TEST_CASE("alias tables cover exactly the positive neighbors") {
    auto g = oracle::random_graph(30, 0.2, 512, true);
    SymMatrix q(30);
    for (const auto& [u, v, w] : g.edges()) q.set(u, v, w);
    auto t = build_transition(q);
    auto rows = q.rows();
    for (int u = 0; u < 30; ++u) {
        std::size_t expected = 0;
        for (const auto& [v, w] : rows[u])
            if (v != u && w > 0) ++expected;
        CHECK(t.targets[u].size() == expected);
        for (int v : t.targets[u]) CHECK(q.at(u, v) > 0);
    }
}

TEST_CASE("forced moves alternate on a two-node path") {
    SymMatrix q(2);
    q.set(0, 1, 1.0);
    auto t = build_transition(q);
    std::mt19937_64 rng(5);
    auto walk = random_walk(t, 0, 4, rng);
    CHECK(walk == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("dead starts emit a single token") {
    SymMatrix q(2);
    auto t = build_transition(q);
    std::mt19937_64 rng(5);
    CHECK(random_walk(t, 0, 10, rng) == std::vector<int>{0});
}

TEST_CASE("corpus size counts only live nodes") {
    SymMatrix q(5);
    q.set(0, 1, 1.0);
    q.set(1, 2, 1.0);  // node 3, 4 dead
    WalkConfig cfg;
    cfg.walks_per_node = 7;
    cfg.walk_length = 5;
    auto corpus = generate_walks(q, cfg);
    CHECK(corpus.size() == 7u * 3u);
    for (const auto& walk : corpus) CHECK(walk.size() == 5);
}

TEST_CASE("every step follows a positive entry") {
    auto g = oracle::random_graph(25, 0.25, 60, true);
    TransformConfig tc;
    tc.lambda = 0.3;
    auto q = transform(g, tc).q;
    WalkConfig cfg;
    cfg.walks_per_node = 3;
    cfg.walk_length = 12;
    cfg.seed = 4;
    auto corpus = generate_walks(q, cfg);
    for (const auto& walk : corpus)
        for (std::size_t s = 0; s + 1 < walk.size(); ++s) CHECK(q.at(walk[s], walk[s + 1]) > 0);
}

TEST_CASE("walk generation is deterministic and thread-count independent") {
    auto g = oracle::random_graph(40, 0.2, 808);
    auto q = transform(g, {}).q;
    WalkConfig cfg;
    cfg.walks_per_node = 4;
    cfg.walk_length = 10;
    cfg.seed = 99;
    auto a = generate_walks(q, cfg);
    auto b = generate_walks(q, cfg);
    CHECK(a == b);
    cfg.threads = 3;
    auto c = generate_walks(q, cfg);
    CHECK(a == c);
    cfg.seed = 100;
    CHECK(a != generate_walks(q, cfg));
}

TEST_CASE("high lambda steers walks away from the shared edge") {
    auto q = shared_edge_q(1.7);
    // Q: shared edge (1,2) keeps 2.0, outer edges get 1 + 1.7 = 2.7.
    CHECK(q.at(1, 2) == 2.0);
    CHECK(q.at(0, 1) == doctest::Approx(2.7));
    WalkConfig cfg;
    cfg.walks_per_node = 600;
    cfg.walk_length = 50;
    cfg.seed = 17;
    auto corpus = generate_walks(q, cfg);
    std::map<std::pair<int, int>, long long> traversals;
    for (const auto& walk : corpus)
        for (std::size_t s = 0; s + 1 < walk.size(); ++s) {
            int a = walk[s], b = walk[s + 1];
            if (a > b) std::swap(a, b);
            ++traversals[{a, b}];
        }
    long long shared = traversals[{1, 2}];
    for (auto edge : {std::pair{0, 1}, {0, 2}, {1, 3}, {2, 3}})
        CHECK(shared < traversals[edge]);
}

TEST_CASE("corpus text uses external ids") {
    WalkCorpus corpus{{0, 1, 0}, {1, 0, 1}};
    CHECK(corpus_to_text(corpus, {10, 20}) == "10 20 10\n20 10 20\n");
    CHECK(corpus_to_text(corpus, {}) == "0 1 0\n1 0 1\n");
}

TEST_CASE("walk config validation") {
    SymMatrix q(2);
    q.set(0, 1, 1.0);
    WalkConfig cfg;
    cfg.walks_per_node = 0;
    CHECK_THROWS_AS(generate_walks(q, cfg), validation_error);
    cfg.walks_per_node = 1;
    cfg.walk_length = 1;
    CHECK_THROWS_AS(generate_walks(q, cfg), validation_error);
}
