#include "h2nt/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "h2nt/util.hpp"

namespace h2nt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool is_triangle(const Graph& g, const Triple& t) {
    return g.has_edge(t[0], t[1]) && g.has_edge(t[0], t[2]) && g.has_edge(t[1], t[2]);
}

}  // namespace

std::string EvalReport::to_json(bool include_timing) const {
    nlohmann::ordered_json j;
    j["task"] = task;
    j["precision_curve"] = precision_curve;
    j["mean_precision"] = mean_precision;
    j["accuracy"] = accuracy;
    if (include_timing) j["timing"] = timing;
    j["config"] = config;
    return j.dump(2) + "\n";
}

EvalReport EvalReport::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    EvalReport r;
    r.task = j.value("task", "");
    r.precision_curve = j.value("precision_curve", std::vector<double>{});
    r.mean_precision = j.value("mean_precision", 0.0);
    r.accuracy = j.value("accuracy", 0.0);
    if (j.contains("timing"))
        for (auto& [k, v] : j["timing"].items()) r.timing[k] = v.get<double>();
    if (j.contains("config"))
        for (auto& [k, v] : j["config"].items()) r.config[k] = v.get<std::string>();
    return r;
}

std::string EvalReport::to_csv() const {
    std::string out;
    if (!precision_curve.empty()) {
        out += "n,precision\n";
        for (std::size_t i = 0; i < precision_curve.size(); ++i)
            out += std::to_string(i + 1) + "," + format_double(precision_curve[i]) + "\n";
        out += "mean," + format_double(mean_precision) + "\n";
    } else {
        out += "metric,value\n";
        out += "accuracy," + format_double(accuracy) + "\n";
    }
    return out;
}

std::pair<Graph, std::vector<Triple>> split_motif_testset(const Graph& g,
                                                          const MotifEvalSpec& spec) {
    if (spec.n_test_triangles < 1) throw validation_error("n_test_triangles must be >= 1");
    auto triangles = enumerate_triangles(g);
    if (static_cast<int>(triangles.size()) < spec.n_test_triangles)
        throw validation_error("graph has only " + std::to_string(triangles.size()) +
                               " triangles, cannot hold out " +
                               std::to_string(spec.n_test_triangles));

    // Partial Fisher-Yates: the first n_test entries are a uniform sample.
    std::mt19937_64 rng(mix_seed(spec.seed, 0x7121));
    int total = static_cast<int>(triangles.size());
    for (int i = 0; i < spec.n_test_triangles; ++i) {
        int j = i + uniform_below(rng, total - i);
        std::swap(triangles[i], triangles[j]);
    }
    std::vector<Triple> positives(triangles.begin(), triangles.begin() + spec.n_test_triangles);
    std::sort(positives.begin(), positives.end());

    Graph train = g;
    for (const auto& t : positives) {
        train.remove_edge(t[0], t[1]);
        train.remove_edge(t[0], t[2]);
        train.remove_edge(t[1], t[2]);
    }
    return {std::move(train), std::move(positives)};
}

std::vector<Triple> sample_negative_triples(const Graph& g, std::size_t count, std::uint64_t seed) {
    if (g.node_count() < 3) throw validation_error("need at least 3 nodes to sample triples");
    std::mt19937_64 rng(mix_seed(seed, 0x0EC));
    std::set<Triple> seen;
    std::vector<Triple> out;
    std::size_t attempts = 0;
    const std::size_t cap = 1000 * count;
    int n = g.node_count();
    while (out.size() < count) {
        if (++attempts > cap)
            throw sampling_error("negative sampling cap exceeded after " + std::to_string(cap) +
                                 " attempts (graph too dense in triangles)");
        int a = uniform_below(rng, n);
        int b = uniform_below(rng, n);
        int c = uniform_below(rng, n);
        if (a == b || a == c || b == c) continue;
        Triple t{a, b, c};
        std::sort(t.begin(), t.end());
        if (is_triangle(g, t)) continue;
        if (!seen.insert(t).second) continue;
        out.push_back(t);
    }
    return out;
}

std::vector<double> score_triples(const Embedding& emb, const std::vector<Triple>& triples,
                                  bool plain_dot) {
    std::vector<double> scores;
    scores.reserve(triples.size());
    for (const auto& t : triples) {
        double s = pair_score(emb, t[0], t[1], plain_dot) + pair_score(emb, t[0], t[2], plain_dot) +
                   pair_score(emb, t[1], t[2], plain_dot);
        scores.push_back(s / 3.0);
    }
    return scores;
}

PrecisionResult precision_at(const std::vector<double>& scores_pos,
                             const std::vector<double>& scores_neg, int n_p_max) {
    std::size_t total = scores_pos.size() + scores_neg.size();
    if (n_p_max < 1 || static_cast<std::size_t>(n_p_max) > total)
        throw validation_error("n_p_max must lie in [1, #scored triples]");

    // Positives first, then negatives; stable sort keeps that order on ties.
    std::vector<std::pair<double, int>> mixed;
    mixed.reserve(total);
    for (double s : scores_pos) mixed.emplace_back(s, 1);
    for (double s : scores_neg) mixed.emplace_back(s, 0);
    std::stable_sort(mixed.begin(), mixed.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    PrecisionResult result;
    result.curve.reserve(n_p_max);
    int hits = 0;
    double mean_acc = 0.0;
    for (int i = 0; i < n_p_max; ++i) {
        hits += mixed[i].second;
        double prec = static_cast<double>(hits) / (i + 1);
        result.curve.push_back(prec);
        mean_acc += prec;
    }
    result.mean = mean_acc / n_p_max;
    return result;
}

Embedding embed_pipeline(const Graph& g, const PipelineConfig& cfg) {
    TransformConfig tc;
    tc.lambda = cfg.lambda;
    tc.threads = cfg.threads;
    TransformResult res = transform(g, tc);
    if (cfg.backend == Backend::spectral) return embed_spectral(res.q, cfg.spectral, g.ext_ids());
    WalkConfig wc = cfg.walk;
    wc.threads = cfg.threads;
    return embed_walk(res.q, wc, cfg.sgns, g.ext_ids());
}

namespace {

void echo_pipeline_config(const PipelineConfig& cfg, EvalReport& report) {
    report.config["lambda"] = format_double(cfg.lambda);
    report.config["backend"] = cfg.backend == Backend::spectral ? "spectral" : "walk";
    report.config["score"] = cfg.plain_scores ? "plain" : "signed";
    if (cfg.backend == Backend::spectral) {
        report.config["dim"] = std::to_string(cfg.spectral.dim);
        report.config["order"] = std::to_string(cfg.spectral.order);
        std::string w;
        auto weights =
            cfg.spectral.weights.empty() ? default_hop_weights(cfg.spectral.order) : cfg.spectral.weights;
        for (double x : weights) {
            if (!w.empty()) w += ",";
            w += format_double(x);
        }
        report.config["weights"] = w;
    } else {
        report.config["dim"] = std::to_string(cfg.sgns.dim);
        report.config["walks_per_node"] = std::to_string(cfg.walk.walks_per_node);
        report.config["walk_length"] = std::to_string(cfg.walk.walk_length);
        report.config["window"] = std::to_string(cfg.sgns.window);
        report.config["negatives"] = std::to_string(cfg.sgns.negatives);
        report.config["epochs"] = std::to_string(cfg.sgns.epochs);
    }
}

}  // namespace

EvalReport run_motif_eval(const Graph& g, const PipelineConfig& cfg, const MotifEvalSpec& spec,
                          int repeats) {
    if (repeats < 1) throw validation_error("repeats must be >= 1");
    if (spec.negative_ratio < 1) throw validation_error("negative_ratio must be >= 1");

    EvalReport report;
    report.task = "motif";
    echo_pipeline_config(cfg, report);
    report.config["n_test_triangles"] = std::to_string(spec.n_test_triangles);
    report.config["negative_ratio"] = std::to_string(spec.negative_ratio);
    report.config["repeats"] = std::to_string(repeats);
    report.config["seed"] = std::to_string(spec.seed);

    std::size_t n_neg = static_cast<std::size_t>(spec.n_test_triangles) * spec.negative_ratio;
    int n_p_max = spec.n_p_max > 0
                      ? spec.n_p_max
                      : static_cast<int>(spec.n_test_triangles + n_neg);
    report.config["n_p_max"] = std::to_string(n_p_max);

    std::vector<double> curve_sum(n_p_max, 0.0);
    double mean_sum = 0.0;
    for (int rep = 0; rep < repeats; ++rep) {
        std::uint64_t rep_seed = mix_seed(spec.seed, 0xA11CE, rep);

        auto t0 = Clock::now();
        MotifEvalSpec rep_spec = spec;
        rep_spec.seed = rep_seed;
        auto [train, positives] = split_motif_testset(g, rep_spec);
        report.timing["split"] += seconds_since(t0);

        t0 = Clock::now();
        auto negatives = sample_negative_triples(g, n_neg, mix_seed(rep_seed, 0x9E6));
        report.timing["negative_sampling"] += seconds_since(t0);

        t0 = Clock::now();
        PipelineConfig rep_cfg = cfg;
        rep_cfg.walk.seed = mix_seed(rep_seed, 1);
        rep_cfg.sgns.seed = mix_seed(rep_seed, 2);
        Embedding emb = embed_pipeline(train, rep_cfg);
        report.timing["embed"] += seconds_since(t0);

        t0 = Clock::now();
        auto pos_scores = score_triples(emb, positives, cfg.plain_scores);
        auto neg_scores = score_triples(emb, negatives, cfg.plain_scores);
        auto prec = precision_at(pos_scores, neg_scores, n_p_max);
        report.timing["score"] += seconds_since(t0);

        for (int i = 0; i < n_p_max; ++i) curve_sum[i] += prec.curve[i];
        mean_sum += prec.mean;
    }

    report.precision_curve.resize(n_p_max);
    for (int i = 0; i < n_p_max; ++i) report.precision_curve[i] = curve_sum[i] / repeats;
    report.mean_precision = mean_sum / repeats;
    return report;
}

EvalReport run_classification_eval(const Graph& g, const std::vector<int>& labels,
                                   const PipelineConfig& cfg, double train_ratio, double l2,
                                   int repeats, std::uint64_t seed) {
    auto t0 = Clock::now();
    Embedding emb = embed_pipeline(g, cfg);
    EvalReport report = run_classification_eval(emb, labels, train_ratio, l2, repeats, seed);
    report.timing["embed"] = seconds_since(t0) - report.timing["classify"];
    echo_pipeline_config(cfg, report);
    report.config["train_ratio"] = format_double(train_ratio);
    report.config["l2"] = format_double(l2);
    report.config["repeats"] = std::to_string(repeats);
    report.config["seed"] = std::to_string(seed);
    return report;
}

EvalReport run_classification_eval(const Embedding& emb, const std::vector<int>& labels,
                                   double train_ratio, double l2, int repeats, std::uint64_t seed) {
    if (repeats < 1) throw validation_error("repeats must be >= 1");
    EvalReport report;
    report.task = "classify";
    report.config["train_ratio"] = format_double(train_ratio);
    report.config["l2"] = format_double(l2);
    report.config["repeats"] = std::to_string(repeats);
    report.config["seed"] = std::to_string(seed);

    auto t0 = Clock::now();
    double acc_sum = 0.0;
    for (int rep = 0; rep < repeats; ++rep) {
        auto res = classify_nodes(emb, labels, train_ratio, l2, mix_seed(seed, 0xC1A55, rep));
        acc_sum += res.accuracy;
    }
    report.accuracy = acc_sum / repeats;
    report.timing["classify"] = seconds_since(t0);
    return report;
}

}  // namespace h2nt
