#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "h2nt/graph.hpp"
#include "h2nt/util.hpp"
#include "oracles.hpp"

using namespace h2nt;

TEST_CASE("edge list parsing") {
    auto load = load_edge_list_text("0 1\n1 2\n");
    CHECK(load.graph.node_count() == 3);
    CHECK(load.graph.edge_count() == 2);
    CHECK(load.graph.edge_weight(0, 1) == 1.0);
    CHECK(load.graph.edge_weight(1, 2) == 1.0);
    CHECK(load.dropped_self_loops == 0);
}

TEST_CASE("duplicate edges keep the last weight") {
    auto load = load_edge_list_text("5 9 2.5\n# comment\n9 5 3.0\n");
    CHECK(load.graph.node_count() == 2);
    CHECK(load.graph.edge_count() == 1);
    CHECK(load.graph.edge_weight(0, 1) == 3.0);
    CHECK(load.graph.ext_id(0) == 5);
    CHECK(load.graph.ext_id(1) == 9);
}

TEST_CASE("self-loop lines are dropped with a count") {
    auto load = load_edge_list_text("0 0\n0 1\n");
    CHECK(load.graph.node_count() == 2);
    CHECK(load.graph.edge_count() == 1);
    CHECK(load.dropped_self_loops == 1);
}

TEST_CASE("malformed lines raise parse errors with line numbers") {
    CHECK_THROWS_AS(load_edge_list_text("0\n"), parse_error);
    CHECK_THROWS_AS(load_edge_list_text("0 1\na b\n"), parse_error);
    CHECK_THROWS_AS(load_edge_list_text("0 1 x\n"), parse_error);
    CHECK_THROWS_AS(load_edge_list_text("0 1 1 1\n"), parse_error);
    try {
        load_edge_list_text("0 1\nbad line here\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("negative weights and ids are rejected") {
    CHECK_THROWS_AS(load_edge_list_text("0 1 -2\n"), validation_error);
    CHECK_THROWS_AS(load_edge_list_text("-1 1\n"), validation_error);
}

TEST_CASE("save format") {
    Graph g(2);
    g.add_edge(0, 1, 1.0);
    CHECK(save_edge_list(g) == "0 1 1\n");
    CHECK(save_edge_list(Graph()) == "");
}

TEST_CASE("save sorts by external id") {
    auto load = load_edge_list_text("9 5 1\n5 2 0.5\n");
    CHECK(save_edge_list(load.graph) == "2 5 0.5\n5 9 1\n");
}

TEST_CASE("load/save round trip on random graphs") {
    for (int trial = 0; trial < 100; ++trial) {
        auto g = oracle::random_graph(2 + trial % 29, 0.3, 1000 + trial, true);
        std::string text = save_edge_list(g);
        auto reloaded = load_edge_list_text(text);
        CHECK(save_edge_list(reloaded.graph) == text);
        CHECK(reloaded.graph.edge_count() == g.edge_count());
    }
}

TEST_CASE("round trip keeps awkward weights exactly") {
    Graph g(3);
    g.add_edge(0, 1, 0.1);
    g.add_edge(1, 2, 1.0 / 3.0);
    g.add_edge(0, 2, 1e-300);
    auto reloaded = load_edge_list_text(save_edge_list(g));
    CHECK(reloaded.graph.edge_weight(0, 1) == 0.1);
    CHECK(reloaded.graph.edge_weight(1, 2) == 1.0 / 3.0);
    CHECK(reloaded.graph.edge_weight(0, 2) == 1e-300);
}

TEST_CASE("graph invariants") {
    Graph g(3);
    CHECK_THROWS_AS(g.add_edge(1, 1), validation_error);
    CHECK_THROWS_AS(g.add_edge(0, 1, -0.5), validation_error);
    CHECK_THROWS_AS(g.add_edge(0, 5), validation_error);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 0, 2.0);  // same undirected edge
    CHECK(g.edge_count() == 1);
    CHECK(g.edge_weight(0, 1) == 2.0);
    CHECK(g.has_edge(1, 0));
    CHECK(g.remove_edge(0, 1));
    CHECK_FALSE(g.remove_edge(0, 1));
    CHECK(g.edge_count() == 0);
}

TEST_CASE("external id mapping is first-appearance order") {
    auto load = load_edge_list_text("42 7\n7 100\n");
    CHECK(load.graph.ext_id(0) == 42);
    CHECK(load.graph.ext_id(1) == 7);
    CHECK(load.graph.ext_id(2) == 100);
    CHECK(load.graph.internal_id(7) == 1);
    CHECK_FALSE(load.graph.internal_id(8).has_value());
}

TEST_CASE("label file parsing") {
    std::istringstream in("0 1\n# note\n3 2\n");
    auto labels = load_labels(in);
    REQUIRE(labels.size() == 2);
    CHECK(labels[0] == std::pair<long long, int>{0, 1});
    CHECK(labels[1] == std::pair<long long, int>{3, 2});
    std::istringstream bad("0\n");
    CHECK_THROWS_AS(load_labels(bad), parse_error);
}
