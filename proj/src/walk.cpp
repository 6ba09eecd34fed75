#include "h2nt/walk.hpp"

#include <algorithm>
#include <numeric>

#include "h2nt/util.hpp"

namespace h2nt {

AliasTable::AliasTable(const std::vector<double>& weights) {
    int n = static_cast<int>(weights.size());
    if (n == 0) return;
    double total = 0.0;
    for (double w : weights) {
        if (w < 0) throw validation_error("alias table weights must be nonnegative");
        total += w;
    }
    if (total <= 0) throw validation_error("alias table needs positive total weight");
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);

    std::vector<double> scaled(n);
    for (int i = 0; i < n; ++i) scaled[i] = weights[i] * n / total;
    std::vector<int> small, large;
    for (int i = 0; i < n; ++i) (scaled[i] < 1.0 ? small : large).push_back(i);
    while (!small.empty() && !large.empty()) {
        int s = small.back();
        small.pop_back();
        int l = large.back();
        large.pop_back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    for (int s : small) prob_[s] = 1.0;
    for (int l : large) prob_[l] = 1.0;
}

int AliasTable::sample(std::mt19937_64& rng) const {
    int column = uniform_below(rng, size());
    return uniform01(rng) < prob_[column] ? column : alias_[column];
}

int TransitionTable::live_count() const {
    int live = 0;
    for (bool d : dead)
        if (!d) ++live;
    return live;
}

TransitionTable build_transition(const SymMatrix& q) {
    TransitionTable t;
    t.dim = q.dim();
    t.targets.resize(t.dim);
    t.alias.resize(t.dim);
    t.dead.assign(t.dim, false);
    auto rows = q.rows();
    for (int u = 0; u < t.dim; ++u) {
        std::vector<double> weights;
        for (const auto& [v, w] : rows[u]) {
            if (v == u || w <= 0) continue;  // no self-transitions
            t.targets[u].push_back(v);
            weights.push_back(w);
        }
        if (weights.empty())
            t.dead[u] = true;
        else
            t.alias[u] = AliasTable(weights);
    }
    return t;
}

std::vector<int> random_walk(const TransitionTable& t, int start, int length, std::mt19937_64& rng) {
    std::vector<int> walk{start};
    if (t.dead[start]) return walk;
    walk.reserve(length);
    int cur = start;
    for (int step = 1; step < length; ++step) {
        cur = t.sample_neighbor(cur, rng);
        walk.push_back(cur);
    }
    return walk;
}

WalkCorpus generate_walks(const TransitionTable& t, const WalkConfig& cfg) {
    if (cfg.walks_per_node < 1) throw validation_error("walks_per_node must be >= 1");
    if (cfg.walk_length < 2) throw validation_error("walk_length must be >= 2");
    std::vector<int> live;
    for (int u = 0; u < t.dim; ++u)
        if (!t.dead[u]) live.push_back(u);

    WalkCorpus corpus(static_cast<std::size_t>(cfg.walks_per_node) * live.size());
    for (int round = 0; round < cfg.walks_per_node; ++round) {
        std::vector<int> order = live;
        std::mt19937_64 shuffle_rng(mix_seed(cfg.seed, 0xF00D, round));
        for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
            std::swap(order[i], order[uniform_below(shuffle_rng, i + 1)]);
        std::size_t base = static_cast<std::size_t>(round) * live.size();
        parallel_for(order.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t pos = begin; pos < end; ++pos) {
                int start = order[pos];
                std::mt19937_64 walk_rng(mix_seed(cfg.seed, round, start));
                corpus[base + pos] = random_walk(t, start, cfg.walk_length, walk_rng);
            }
        });
    }
    return corpus;
}

WalkCorpus generate_walks(const SymMatrix& q, const WalkConfig& cfg) {
    return generate_walks(build_transition(q), cfg);
}

std::string corpus_to_text(const WalkCorpus& corpus, const std::vector<long long>& ext_ids) {
    std::string out;
    for (const auto& walk : corpus) {
        for (std::size_t i = 0; i < walk.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(ext_ids.empty() ? walk[i] : ext_ids[walk[i]]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace h2nt
