#include "h2nt/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>

#include "h2nt/util.hpp"

namespace h2nt {

Graph::Graph(int n) {
    if (n < 0) throw validation_error("node count must be nonnegative");
    adj_.resize(n);
    ext_ids_.resize(n);
    for (int i = 0; i < n; ++i) {
        ext_ids_[i] = i;
        ext_to_int_.emplace(i, i);
    }
}

int Graph::add_node(long long ext_id) {
    auto it = ext_to_int_.find(ext_id);
    if (it != ext_to_int_.end()) return it->second;
    int id = node_count();
    adj_.emplace_back();
    ext_ids_.push_back(ext_id);
    ext_to_int_.emplace(ext_id, id);
    return id;
}

void Graph::check_node(int u) const {
    if (u < 0 || u >= node_count()) throw validation_error("node index out of range");
}

void Graph::add_edge(int u, int v, double w) {
    check_node(u);
    check_node(v);
    if (u == v) throw validation_error("self-loops are not allowed");
    if (w < 0) throw validation_error("edge weights must be nonnegative");
    auto insert = [](std::vector<std::pair<int, double>>& list, int to, double weight) {
        auto it = std::lower_bound(list.begin(), list.end(), to,
                                   [](const auto& e, int key) { return e.first < key; });
        if (it != list.end() && it->first == to) {
            it->second = weight;
            return false;
        }
        list.insert(it, {to, weight});
        return true;
    };
    bool fresh = insert(adj_[u], v, w);
    insert(adj_[v], u, w);
    if (fresh) ++edge_count_;
}

bool Graph::remove_edge(int u, int v) {
    check_node(u);
    check_node(v);
    auto erase = [](std::vector<std::pair<int, double>>& list, int to) {
        auto it = std::lower_bound(list.begin(), list.end(), to,
                                   [](const auto& e, int key) { return e.first < key; });
        if (it == list.end() || it->first != to) return false;
        list.erase(it);
        return true;
    };
    bool existed = erase(adj_[u], v);
    erase(adj_[v], u);
    if (existed) --edge_count_;
    return existed;
}

bool Graph::has_edge(int u, int v) const {
    check_node(u);
    check_node(v);
    const auto& list = adj_[u];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const auto& e, int key) { return e.first < key; });
    return it != list.end() && it->first == v;
}

double Graph::edge_weight(int u, int v) const {
    check_node(u);
    check_node(v);
    const auto& list = adj_[u];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const auto& e, int key) { return e.first < key; });
    return (it != list.end() && it->first == v) ? it->second : 0.0;
}

int Graph::degree(int u) const {
    check_node(u);
    return static_cast<int>(adj_[u].size());
}

const std::vector<std::pair<int, double>>& Graph::neighbors(int u) const {
    check_node(u);
    return adj_[u];
}

std::optional<int> Graph::internal_id(long long ext) const {
    auto it = ext_to_int_.find(ext);
    if (it == ext_to_int_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::tuple<int, int, double>> Graph::edges() const {
    std::vector<std::tuple<int, int, double>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < node_count(); ++u)
        for (const auto& [v, w] : adj_[u])
            if (u < v) out.emplace_back(u, v, w);
    return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

long long parse_int_token(std::string_view tok, int line_no, const char* what) {
    long long v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw parse_error("line " + std::to_string(line_no) + ": expected integer " + what +
                          ", got '" + std::string(tok) + "'");
    return v;
}

double parse_real_token(std::string_view tok, int line_no, const char* what) {
    double v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw parse_error("line " + std::to_string(line_no) + ": expected real " + what +
                          ", got '" + std::string(tok) + "'");
    return v;
}

}  // namespace

EdgeListLoad load_edge_list(std::istream& in) {
    EdgeListLoad result;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        if (tokens.size() < 2 || tokens.size() > 3)
            throw parse_error("line " + std::to_string(line_no) + ": expected 'u v' or 'u v w', got " +
                              std::to_string(tokens.size()) + " token(s)");
        long long eu = parse_int_token(tokens[0], line_no, "node id");
        long long ev = parse_int_token(tokens[1], line_no, "node id");
        if (eu < 0 || ev < 0)
            throw validation_error("line " + std::to_string(line_no) + ": node ids must be nonnegative");
        double w = 1.0;
        if (tokens.size() == 3) {
            w = parse_real_token(tokens[2], line_no, "weight");
            if (w < 0)
                throw validation_error("line " + std::to_string(line_no) + ": negative edge weight");
        }
        int u = result.graph.add_node(eu);
        int v = result.graph.add_node(ev);
        if (u == v) {
            ++result.dropped_self_loops;
            continue;
        }
        result.graph.add_edge(u, v, w);
    }
    return result;
}

EdgeListLoad load_edge_list_text(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

EdgeListLoad load_edge_list_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open edge list file: " + path.string());
    return load_edge_list(in);
}

std::string save_edge_list(const Graph& g) {
    std::vector<std::tuple<long long, long long, double>> rows;
    rows.reserve(g.edge_count());
    for (const auto& [u, v, w] : g.edges()) {
        long long a = g.ext_id(u);
        long long b = g.ext_id(v);
        if (a > b) std::swap(a, b);
        rows.emplace_back(a, b, w);
    }
    std::sort(rows.begin(), rows.end());
    std::string out;
    for (const auto& [a, b, w] : rows) {
        out += std::to_string(a);
        out += ' ';
        out += std::to_string(b);
        out += ' ';
        out += format_double(w);
        out += '\n';
    }
    return out;
}

void save_edge_list_file(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write edge list file: " + path.string());
    out << save_edge_list(g);
}

std::vector<std::pair<long long, int>> load_labels(std::istream& in) {
    std::vector<std::pair<long long, int>> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        if (tokens.size() != 2)
            throw parse_error("line " + std::to_string(line_no) + ": expected 'node_id label'");
        long long id = parse_int_token(tokens[0], line_no, "node id");
        long long label = parse_int_token(tokens[1], line_no, "label");
        out.emplace_back(id, static_cast<int>(label));
    }
    return out;
}

std::vector<std::pair<long long, int>> load_labels_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open label file: " + path.string());
    return load_labels(in);
}

}  // namespace h2nt
