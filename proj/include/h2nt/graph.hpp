#ifndef H2NT_GRAPH_HPP
#define H2NT_GRAPH_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace h2nt {

// Undirected weighted graph. Internal node ids are contiguous 0..n-1; every
// node carries an external integer id (identity for generated graphs).
// No self-loops, no duplicate edges, weights >= 0.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    // Register a node for an external id (first appearance wins); returns the
    // internal id either way.
    int add_node(long long ext_id);

    // Insert or replace the undirected edge (u, v) by internal id.
    void add_edge(int u, int v, double w = 1.0);
    bool remove_edge(int u, int v);

    int node_count() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const { return edge_count_; }
    bool has_edge(int u, int v) const;
    double edge_weight(int u, int v) const;  // 0 when absent
    int degree(int u) const;

    // Neighbors sorted by internal id.
    const std::vector<std::pair<int, double>>& neighbors(int u) const;

    long long ext_id(int u) const { return ext_ids_.at(u); }
    const std::vector<long long>& ext_ids() const { return ext_ids_; }
    std::optional<int> internal_id(long long ext) const;

    // All edges as (u, v, w) with u < v, sorted.
    std::vector<std::tuple<int, int, double>> edges() const;

private:
    void check_node(int u) const;

    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<long long> ext_ids_;
    std::unordered_map<long long, int> ext_to_int_;
    std::size_t edge_count_ = 0;
};

struct EdgeListLoad {
    Graph graph;
    int dropped_self_loops = 0;
};

// Line-oriented edge list: "u v" or "u v w", '#' starts a comment line.
// External ids map to internal ids in first-appearance order; duplicate edges
// keep the last weight; self-loop lines register the node but drop the edge.
EdgeListLoad load_edge_list(std::istream& in);
EdgeListLoad load_edge_list_text(const std::string& text);
EdgeListLoad load_edge_list_file(const std::filesystem::path& path);

// One "u v w" line per edge in external ids, sorted by (u, v); weights in
// shortest round-trip form so load(save(g)) is exact.
std::string save_edge_list(const Graph& g);
void save_edge_list_file(const Graph& g, const std::filesystem::path& path);

// Label file: one "node_id label" pair per line, integers, '#' comments.
std::vector<std::pair<long long, int>> load_labels(std::istream& in);
std::vector<std::pair<long long, int>> load_labels_file(const std::filesystem::path& path);

}  // namespace h2nt

#endif
