#include "h2nt/sgns.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "h2nt/util.hpp"

namespace h2nt {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// -log sigmoid(x), stable for large |x|.
double softplus_neg(double x) {
    if (x > 0) return std::log1p(std::exp(-x));
    return -x + std::log1p(std::exp(x));
}

struct Shared {
    int dim;
    int window;
    int negatives;
    double lr_init;
    double lr_min;
    std::uint64_t total_tokens;  // across all epochs
    std::vector<double> in;
    std::vector<double> out;
    AliasTable noise;
    std::vector<int> noise_ids;
};

// Processes one walk; returns (loss sum, pair count) for the epoch average.
std::pair<double, std::size_t> train_walk(Shared& s, const std::vector<int>& walk,
                                          std::mt19937_64& rng, std::uint64_t& processed) {
    double loss = 0.0;
    std::size_t pairs = 0;
    int len = static_cast<int>(walk.size());
    std::vector<double> grad(s.dim);
    for (int t = 0; t < len; ++t) {
        int center = walk[t];
        double frac = static_cast<double>(processed) / static_cast<double>(s.total_tokens);
        double lr = std::max(s.lr_min, s.lr_init * (1.0 - frac));
        ++processed;
        double* vc = s.in.data() + static_cast<std::size_t>(center) * s.dim;
        for (int c = std::max(0, t - s.window); c <= std::min(len - 1, t + s.window); ++c) {
            if (c == t) continue;
            int context = walk[c];
            std::fill(grad.begin(), grad.end(), 0.0);
            for (int k = 0; k <= s.negatives; ++k) {
                int target;
                double label;
                if (k == 0) {
                    target = context;
                    label = 1.0;
                } else {
                    target = s.noise_ids[s.noise.sample(rng)];
                    if (target == context) continue;
                    label = 0.0;
                }
                double* vo = s.out.data() + static_cast<std::size_t>(target) * s.dim;
                double score = 0.0;
                for (int i = 0; i < s.dim; ++i) score += vc[i] * vo[i];
                loss += label > 0 ? softplus_neg(score) : softplus_neg(-score);
                double g = (label - sigmoid(score)) * lr;
                for (int i = 0; i < s.dim; ++i) grad[i] += g * vo[i];
                for (int i = 0; i < s.dim; ++i) vo[i] += g * vc[i];
            }
            for (int i = 0; i < s.dim; ++i) vc[i] += grad[i];
            ++pairs;
        }
    }
    return {loss, pairs};
}

}  // namespace

Embedding train_sgns(const WalkCorpus& corpus, int vocab_size, const SgnsConfig& cfg,
                     SgnsStats* stats) {
    if (cfg.dim < 1) throw validation_error("embedding dimension must be >= 1");
    if (cfg.window < 1) throw validation_error("window must be >= 1");
    if (cfg.negatives < 1) throw validation_error("negatives must be >= 1");
    if (cfg.epochs < 1) throw validation_error("epochs must be >= 1");

    std::uint64_t token_count = 0;
    std::vector<double> freq(vocab_size, 0.0);
    for (const auto& walk : corpus) {
        token_count += walk.size();
        for (int v : walk) {
            if (v < 0 || v >= vocab_size) throw validation_error("corpus token outside vocabulary");
            freq[v] += 1.0;
        }
    }
    if (token_count == 0) throw validation_error("corpus is empty");

    Shared s;
    s.dim = cfg.dim;
    s.window = cfg.window;
    s.negatives = cfg.negatives;
    s.lr_init = cfg.lr_init;
    s.lr_min = cfg.lr_init / 100.0;
    s.total_tokens = token_count * static_cast<std::uint64_t>(cfg.epochs);

    std::vector<double> noise_weights;
    for (int v = 0; v < vocab_size; ++v) {
        if (freq[v] > 0) {
            s.noise_ids.push_back(v);
            noise_weights.push_back(std::pow(freq[v], 0.75));
        }
    }
    s.noise = AliasTable(noise_weights);

    std::mt19937_64 init_rng(mix_seed(cfg.seed, 0x1217));
    s.in.resize(static_cast<std::size_t>(vocab_size) * cfg.dim);
    s.out.assign(static_cast<std::size_t>(vocab_size) * cfg.dim, 0.0);
    for (double& x : s.in) x = (uniform01(init_rng) - 0.5) / cfg.dim;

    if (stats) stats->epoch_loss.clear();

    if (cfg.threads <= 1) {
        std::uint64_t processed = 0;
        for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
            std::mt19937_64 rng(mix_seed(cfg.seed, 0xE90C, epoch));
            double loss = 0.0;
            std::size_t pairs = 0;
            for (const auto& walk : corpus) {
                auto [l, p] = train_walk(s, walk, rng, processed);
                loss += l;
                pairs += p;
            }
            if (stats) stats->epoch_loss.push_back(pairs ? loss / pairs : 0.0);
        }
    } else {
        // Asynchronous updates: statistically equivalent, not byte-reproducible.
        std::atomic<std::uint64_t> processed{0};
        for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
            std::atomic<double> loss{0.0};
            std::atomic<std::size_t> pairs{0};
            parallel_for(corpus.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
                std::mt19937_64 rng(mix_seed(cfg.seed, 0xE90C ^ begin, epoch));
                double local_loss = 0.0;
                std::size_t local_pairs = 0;
                for (std::size_t w = begin; w < end; ++w) {
                    std::uint64_t snapshot = processed.fetch_add(corpus[w].size());
                    auto [l, p] = train_walk(s, corpus[w], rng, snapshot);
                    local_loss += l;
                    local_pairs += p;
                }
                loss.fetch_add(local_loss);
                pairs.fetch_add(local_pairs);
            });
            if (stats) stats->epoch_loss.push_back(pairs ? loss.load() / pairs : 0.0);
        }
    }

    Embedding emb;
    emb.n = vocab_size;
    emb.d = cfg.dim;
    emb.values = std::move(s.in);
    emb.ids.resize(vocab_size);
    for (int i = 0; i < vocab_size; ++i) emb.ids[i] = i;
    emb.meta.backend = "walk";
    emb.meta.seed = cfg.seed;
    return emb;
}

Embedding embed_walk(const SymMatrix& q, const WalkConfig& wcfg, const SgnsConfig& scfg,
                     const std::vector<long long>& ids) {
    if (!ids.empty() && static_cast<int>(ids.size()) != q.dim())
        throw validation_error("id list length must equal the matrix dimension");
    TransitionTable t = build_transition(q);
    WalkCorpus corpus = generate_walks(t, wcfg);
    Embedding emb = train_sgns(corpus, q.dim(), scfg);
    if (!ids.empty()) emb.ids = ids;
    for (int u = 0; u < t.dim; ++u) {
        if (t.dead[u]) {
            emb.meta.dead_nodes.push_back(u);
            std::fill(emb.row(u), emb.row(u) + emb.d, 0.0);
        }
    }
    emb.meta.seed = mix_seed(wcfg.seed, scfg.seed);
    return emb;
}

}  // namespace h2nt
