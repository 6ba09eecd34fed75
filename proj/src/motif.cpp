#include "h2nt/motif.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "h2nt/util.hpp"

namespace h2nt {

namespace {

// Forward orientation: each edge points from lower to higher degree rank, so
// every triangle is discovered exactly once at its lowest-ranked corner.
struct Oriented {
    std::vector<int> rank;
    std::vector<std::vector<int>> out;  // out-neighbors sorted by rank
};

Oriented orient_by_degree(const Graph& g) {
    int n = g.node_count();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = g.degree(a), db = g.degree(b);
        return da != db ? da < db : a < b;
    });
    Oriented o;
    o.rank.assign(n, 0);
    for (int pos = 0; pos < n; ++pos) o.rank[order[pos]] = pos;
    o.out.assign(n, {});
    for (int u = 0; u < n; ++u) {
        for (const auto& [v, w] : g.neighbors(u)) {
            (void)w;
            if (o.rank[v] > o.rank[u]) o.out[u].push_back(v);
        }
        std::sort(o.out[u].begin(), o.out[u].end(),
                  [&](int a, int b) { return o.rank[a] < o.rank[b]; });
    }
    return o;
}

// Calls fn(u, v, w) once per triangle, for nodes u in [begin, end).
template <typename Fn>
void scan_triangles(const Oriented& o, std::size_t begin, std::size_t end, Fn&& fn) {
    std::vector<char> mark(o.rank.size(), 0);
    for (std::size_t u = begin; u < end; ++u) {
        for (int v : o.out[u]) mark[v] = 1;
        for (int v : o.out[u]) {
            for (int w : o.out[v])
                if (mark[w]) fn(static_cast<int>(u), v, w);
        }
        for (int v : o.out[u]) mark[v] = 0;
    }
}

}  // namespace

SymMatrix motif_adjacency(const Graph& g, int threads) {
    int n = g.node_count();
    Oriented o = orient_by_degree(g);
    SymMatrix a_m(n);
    if (threads <= 1) {
        scan_triangles(o, 0, n, [&](int u, int v, int w) {
            a_m.add(u, v, 1.0);
            a_m.add(u, w, 1.0);
            a_m.add(v, w, 1.0);
        });
        return a_m;
    }
    // Integer increments commute exactly, so merging per-chunk counts in any
    // order reproduces the sequential result bit for bit.
    std::map<std::uint64_t, long long> merged;
    std::mutex merge_mu;
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        std::map<std::uint64_t, long long> local;
        scan_triangles(o, begin, end, [&](int u, int v, int w) {
            auto bump = [&](int a, int b) {
                if (a > b) std::swap(a, b);
                local[(static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b)] += 1;
            };
            bump(u, v);
            bump(u, w);
            bump(v, w);
        });
        std::scoped_lock lock(merge_mu);
        for (const auto& [k, c] : local) merged[k] += c;
    });
    for (const auto& [k, c] : merged)
        a_m.add(static_cast<int>(k >> 32), static_cast<int>(k & 0xFFFFFFFFu),
                static_cast<double>(c));
    return a_m;
}

std::vector<std::array<int, 3>> enumerate_triangles(const Graph& g) {
    Oriented o = orient_by_degree(g);
    std::vector<std::array<int, 3>> out;
    scan_triangles(o, 0, g.node_count(), [&](int u, int v, int w) {
        std::array<int, 3> t{u, v, w};
        std::sort(t.begin(), t.end());
        out.push_back(t);
    });
    std::sort(out.begin(), out.end());
    return out;
}

long long count_triangles(const Graph& g) {
    Oriented o = orient_by_degree(g);
    long long count = 0;
    scan_triangles(o, 0, g.node_count(), [&](int, int, int) { ++count; });
    return count;
}

std::pair<SymMatrix, long long> heterophily_matrix(const SymMatrix& a_m) {
    double f_max = a_m.max_entry();
    if (f_max < 0) throw validation_error("motif adjacency must be nonnegative");
    SymMatrix h(a_m.dim());
    for (const auto& e : a_m.upper_entries())
        h.set(e.i, e.j, e.v > 0 ? f_max - e.v : 0.0);
    return {std::move(h), static_cast<long long>(std::llround(f_max))};
}

SymMatrix unify(const SymMatrix& a_m, const SymMatrix& h, double lambda) {
    if (lambda < 0) throw validation_error("lambda must be nonnegative");
    return a_m.plus_scaled(h, lambda);
}

namespace {

SymMatrix compact(const SymMatrix& mat, const std::vector<int>& keep,
                  const std::vector<int>& new_index) {
    SymMatrix out(static_cast<int>(keep.size()));
    for (const auto& e : mat.upper_entries()) {
        int a = new_index[e.i];
        int b = new_index[e.j];
        if (a >= 0 && b >= 0) out.set(a, b, e.v);
    }
    return out;
}

}  // namespace

TransformResult transform(const Graph& g, const TransformConfig& cfg) {
    if (cfg.lambda < 0) throw validation_error("lambda must be nonnegative");
    auto t0 = std::chrono::steady_clock::now();

    TransformResult res;
    res.a_m = motif_adjacency(g, cfg.threads);
    auto [h, f_max] = heterophily_matrix(res.a_m);
    res.h = std::move(h);
    res.max_motif_weight = f_max;
    res.q = unify(res.a_m, res.h, cfg.lambda);

    double weight_sum = 0.0;
    for (const auto& e : res.a_m.upper_entries()) {
        if (e.v > 0) ++res.motif_edge_count;
        weight_sum += e.v;
    }
    res.triangle_count = std::llround(weight_sum / 3.0);
    res.dropped_edge_count = g.edge_count() - res.motif_edge_count;

    res.nodes.resize(g.node_count());
    std::iota(res.nodes.begin(), res.nodes.end(), 0);

    if (!cfg.keep_isolated) {
        std::vector<char> in_motif(g.node_count(), 0);
        for (const auto& e : res.a_m.upper_entries())
            if (e.v > 0) in_motif[e.i] = in_motif[e.j] = 1;
        std::vector<int> keep;
        std::vector<int> new_index(g.node_count(), -1);
        for (int u = 0; u < g.node_count(); ++u)
            if (in_motif[u]) {
                new_index[u] = static_cast<int>(keep.size());
                keep.push_back(u);
            }
        res.a_m = compact(res.a_m, keep, new_index);
        res.h = compact(res.h, keep, new_index);
        res.q = compact(res.q, keep, new_index);
        res.nodes = std::move(keep);
    }

    res.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

SparsityStats sparsity_stats(const Graph& g, const TransformResult& res) {
    SparsityStats s;
    s.graph_edges = g.edge_count();
    s.motif_edges = res.motif_edge_count;
    s.ratio = s.graph_edges == 0 ? 0.0 : static_cast<double>(s.motif_edges) / s.graph_edges;
    s.triangles = res.triangle_count;
    s.seconds = res.elapsed_seconds;
    return s;
}

}  // namespace h2nt
