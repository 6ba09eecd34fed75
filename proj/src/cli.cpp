#include "h2nt/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "h2nt/eval.hpp"
#include "h2nt/graph.hpp"
#include "h2nt/lemma.hpp"
#include "h2nt/util.hpp"

namespace h2nt {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;   // evaluation/assertion failure
constexpr int kExitUsage = 2;  // usage or I/O error

struct BackendFlags {
    std::string backend = "spectral";
    double lambda = 0.5;
    int dim = 0;  // 0 -> 16 for n < 2000, 128 otherwise
    int order = 3;
    std::string weights;  // comma-separated, empty -> 0.1^i
    int walks = 10;
    int walk_length = 40;
    int window = 5;
    int negatives = 5;
    int epochs = 5;
    double lr = 0.025;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 -> H2NT_THREADS or core count
    std::string score = "signed";
};

void add_backend_flags(CLI::App* cmd, BackendFlags& f, bool with_score) {
    cmd->add_option("--backend", f.backend, "Embedding backend")
        ->check(CLI::IsMember({"spectral", "walk"}))
        ->capture_default_str();
    cmd->add_option("--lambda", f.lambda,
                    "Heterophily unification weight (recommended sweep: "
                    "0.1 0.3 0.5 0.7 1.3 1.5 1.7)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--dim", f.dim, "Embedding dimension (default 16 if n < 2000, else 128)");
    cmd->add_option("--order", f.order, "Highest proximity order (spectral)")->capture_default_str();
    cmd->add_option("--weights", f.weights,
                    "Comma-separated proximity weights w1..wl (default 0.1^i)");
    cmd->add_option("--walks", f.walks, "Walks per node (walk backend)")->capture_default_str();
    cmd->add_option("--walk-length", f.walk_length, "Nodes per walk")->capture_default_str();
    cmd->add_option("--window", f.window, "Skip-gram window")->capture_default_str();
    cmd->add_option("--negatives", f.negatives, "Negative samples per pair")->capture_default_str();
    cmd->add_option("--epochs", f.epochs, "Training epochs")->capture_default_str();
    cmd->add_option("--lr", f.lr, "Initial learning rate")->capture_default_str();
    cmd->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--threads", f.threads, "Worker cap (default: H2NT_THREADS or cores)");
    if (with_score)
        cmd->add_option("--score", f.score, "Pair score form (spectral backend)")
            ->check(CLI::IsMember({"signed", "plain"}))
            ->capture_default_str();
}

std::vector<double> parse_weight_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw validation_error("bad weight '" + item + "' in --weights");
        }
    }
    return out;
}

PipelineConfig pipeline_from_flags(const BackendFlags& f, int graph_nodes) {
    PipelineConfig cfg;
    cfg.lambda = f.lambda;
    cfg.backend = f.backend == "walk" ? Backend::walk : Backend::spectral;
    cfg.threads = f.threads > 0 ? f.threads : threads_from_env();
    cfg.plain_scores = f.score == "plain";

    int dim = f.dim > 0 ? f.dim : (graph_nodes < 2000 ? 16 : 128);
    cfg.spectral.dim = dim;
    cfg.spectral.order = f.order;
    if (!f.weights.empty()) cfg.spectral.weights = parse_weight_list(f.weights);

    cfg.walk.walks_per_node = f.walks;
    cfg.walk.walk_length = f.walk_length;
    cfg.walk.seed = mix_seed(f.seed, 1);
    cfg.walk.threads = cfg.threads;
    cfg.sgns.dim = dim;
    cfg.sgns.window = f.window;
    cfg.sgns.negatives = f.negatives;
    cfg.sgns.epochs = f.epochs;
    cfg.sgns.lr_init = f.lr;
    cfg.sgns.seed = mix_seed(f.seed, 2);
    return cfg;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write file: " + path.string());
    out << text;
}

// Aligns a label file to embedding/graph rows by external id.
std::vector<int> align_labels(const std::vector<std::pair<long long, int>>& pairs,
                              const std::vector<long long>& ids) {
    std::map<long long, int> by_ext(pairs.begin(), pairs.end());
    std::vector<int> labels;
    labels.reserve(ids.size());
    for (long long ext : ids) {
        auto it = by_ext.find(ext);
        if (it == by_ext.end())
            throw validation_error("label file misses node " + std::to_string(ext));
        labels.push_back(it->second);
    }
    return labels;
}

int cmd_transform(const std::string& input, const std::string& output, double lambda,
                  const std::string& stats_out, int threads) {
    auto load = load_edge_list_file(input);
    if (load.dropped_self_loops > 0)
        std::cerr << "warning: dropped " << load.dropped_self_loops << " self-loop line(s)\n";

    TransformConfig cfg;
    cfg.lambda = lambda;
    cfg.threads = threads > 0 ? threads : threads_from_env();
    TransformResult res = transform(load.graph, cfg);

    // Q as a weighted edge list in external ids, consumable by any embedder.
    Graph q_graph;
    for (int row = 0; row < res.q.dim(); ++row)
        q_graph.add_node(load.graph.ext_id(res.nodes[row]));
    for (const auto& e : res.q.upper_entries())
        if (e.v != 0.0) q_graph.add_edge(e.i, e.j, e.v);
    save_edge_list_file(q_graph, output);

    SparsityStats stats = sparsity_stats(load.graph, res);
    if (stats.motif_edges == 0)
        std::cerr << "warning: no triangles found; transformed network is empty\n";
    nlohmann::ordered_json j;
    j["graph_edges"] = stats.graph_edges;
    j["motif_edges"] = stats.motif_edges;
    j["ratio"] = stats.ratio;
    j["triangles"] = stats.triangles;
    j["dropped_edges"] = res.dropped_edge_count;
    j["max_motif_weight"] = res.max_motif_weight;
    j["lambda"] = lambda;
    j["seconds"] = stats.seconds;
    if (!stats_out.empty()) write_text_file(stats_out, j.dump(2) + "\n");
    std::cout << "transform: " << stats.motif_edges << "/" << stats.graph_edges
              << " edges kept, " << stats.triangles << " triangles\n";
    return kExitOk;
}

int cmd_embed(const std::string& input, const std::string& output, const BackendFlags& flags,
              const std::string& corpus_out) {
    auto load = load_edge_list_file(input);
    const Graph& g = load.graph;
    PipelineConfig cfg = pipeline_from_flags(flags, g.node_count());

    TransformConfig tc;
    tc.lambda = cfg.lambda;
    tc.threads = cfg.threads;
    TransformResult res = transform(g, tc);

    Embedding emb;
    if (cfg.backend == Backend::spectral) {
        emb = embed_spectral(res.q, cfg.spectral, g.ext_ids());
    } else {
        TransitionTable table = build_transition(res.q);
        if (table.live_count() == 0)
            throw validation_error(
                "transformed network has no triangles; the walk backend has nothing to sample");
        WalkCorpus corpus = generate_walks(table, cfg.walk);
        if (!corpus_out.empty()) write_text_file(corpus_out, corpus_to_text(corpus, g.ext_ids()));
        emb = train_sgns(corpus, res.q.dim(), cfg.sgns);
        emb.ids = g.ext_ids();
        for (int u = 0; u < table.dim; ++u)
            if (table.dead[u]) {
                emb.meta.dead_nodes.push_back(u);
                std::fill(emb.row(u), emb.row(u) + emb.d, 0.0);
            }
    }
    emb.meta.lambda = cfg.lambda;
    emb.meta.order = cfg.spectral.order;
    emb.meta.seed = flags.seed;
    if (emb.meta.backend == "walk") emb.meta.weights.clear();

    save_embedding_file(emb, output);
    save_meta_file(emb, output + ".meta.json");
    std::cout << "embed: wrote " << emb.n << "x" << emb.d << " (" << emb.meta.backend << ")\n";
    return kExitOk;
}

int cmd_eval(const std::string& task, const std::string& input, const std::string& labels_path,
             const std::string& embedding_path, const BackendFlags& flags, int n_test,
             int negative_ratio, int np_max, int repeats, double train_ratio, double l2,
             const std::string& report_path, const std::string& csv_path) {
    EvalReport report;
    if (task == "motif") {
        if (input.empty()) throw validation_error("--input is required for motif evaluation");
        if (n_test < 1) throw validation_error("--n-test is required for motif evaluation");
        auto load = load_edge_list_file(input);
        PipelineConfig cfg = pipeline_from_flags(flags, load.graph.node_count());
        MotifEvalSpec spec;
        spec.n_test_triangles = n_test;
        spec.negative_ratio = negative_ratio;
        spec.n_p_max = np_max;
        spec.seed = flags.seed;
        report = run_motif_eval(load.graph, cfg, spec, repeats);
        std::cout << "motif eval: mean precision " << report.mean_precision << "\n";
    } else {
        if (labels_path.empty()) throw validation_error("--labels is required for classification");
        auto label_pairs = load_labels_file(labels_path);
        if (!embedding_path.empty()) {
            Embedding emb = load_embedding_file(embedding_path);
            auto labels = align_labels(label_pairs, emb.ids);
            report = run_classification_eval(emb, labels, train_ratio, l2, repeats, flags.seed);
        } else {
            if (input.empty())
                throw validation_error("--input or --embedding is required for classification");
            auto load = load_edge_list_file(input);
            auto labels = align_labels(label_pairs, load.graph.ext_ids());
            PipelineConfig cfg = pipeline_from_flags(flags, load.graph.node_count());
            report = run_classification_eval(load.graph, labels, cfg, train_ratio, l2, repeats,
                                             flags.seed);
        }
        std::cout << "classification eval: accuracy " << report.accuracy << "\n";
    }
    if (!report_path.empty()) write_text_file(report_path, report.to_json());
    if (!csv_path.empty()) write_text_file(csv_path, report.to_csv());
    return kExitOk;
}

int cmd_verify(const std::string& grid_path, const std::string& report_path, int l_max,
               int samples, std::uint64_t seed, double rel_tol, double abs_tol, double mc_tol,
               int tri_m, int tri_r, double tri_p, double tri_q) {
    std::vector<PpmParams> grid;
    if (grid_path.empty()) {
        grid = default_lemma_grid();
    } else {
        std::ifstream in(grid_path);
        if (!in) throw io_error("cannot open grid file: " + grid_path);
        int m, r;
        double p, q;
        while (in >> m >> r >> p >> q) grid.emplace_back(m, r, p, q);
        if (grid.empty()) throw validation_error("grid file holds no 'm r p q' rows");
    }

    std::vector<LemmaReport> reports;
    reports.push_back(verify_lemma1(grid, l_max, rel_tol));
    reports.push_back(verify_symmetry(grid, l_max, abs_tol));
    reports.push_back(verify_rw_inequality(grid, l_max));
    PpmParams tri_params(tri_m, tri_r, tri_p, tri_q);
    reports.push_back(verify_triangle_expectations(tri_params, samples, seed, mc_tol));
    reports.push_back(sampled_power_diagnostic(tri_params, l_max, std::min(samples, 200), seed));

    bool all_pass = true;
    for (const auto& rep : reports) {
        all_pass = all_pass && rep.pass;
        std::cout << rep.lemma << (rep.empirical ? " [empirical]" : "") << ": "
                  << (rep.pass ? "PASS" : "FAIL") << " (max abs err " << rep.max_abs_err
                  << ", max rel err " << rep.max_rel_err << ")\n";
    }
    if (!report_path.empty()) {
        std::string joined = "[\n";
        for (std::size_t i = 0; i < reports.size(); ++i)
            joined += reports[i].to_json() + (i + 1 < reports.size() ? ",\n" : "\n");
        joined += "]\n";
        write_text_file(report_path, joined);
    }
    return all_pass ? kExitOk : kExitFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Motif-based homophily/heterophily network transformation and embedding"};
    app.require_subcommand(1);

    // transform
    auto* transform_cmd = app.add_subcommand("transform", "Rewrite a network as Q = A_M + lambda*H");
    std::string t_input, t_output, t_stats;
    double t_lambda = 0.5;
    int t_threads = 0;
    transform_cmd->add_option("--input", t_input, "Edge list input")->required();
    transform_cmd->add_option("--output", t_output, "Weighted edge list for Q")->required();
    transform_cmd->add_option("--lambda", t_lambda, "Heterophily weight")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    transform_cmd->add_option("--stats-out", t_stats, "Sparsity stats JSON path");
    transform_cmd->add_option("--threads", t_threads, "Worker cap");

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "Transform and embed a network");
    std::string e_input, e_output, e_corpus;
    BackendFlags e_flags;
    embed_cmd->add_option("--input", e_input, "Edge list input")->required();
    embed_cmd->add_option("--output", e_output, "Embedding file path")->required();
    embed_cmd->add_option("--corpus-out", e_corpus, "Walk corpus dump (walk backend)");
    add_backend_flags(embed_cmd, e_flags, false);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Motif prediction / classification harness");
    std::string v_task = "motif", v_input, v_labels, v_embedding, v_report, v_csv;
    BackendFlags v_flags;
    int v_n_test = 0, v_neg_ratio = 10, v_np_max = 0, v_repeats = 5;
    double v_train_ratio = 0.1, v_l2 = 1.0;
    eval_cmd->add_option("--task", v_task, "Evaluation task")
        ->check(CLI::IsMember({"motif", "classify"}))
        ->capture_default_str();
    eval_cmd->add_option("--input", v_input, "Edge list input");
    eval_cmd->add_option("--labels", v_labels, "Label file (classification)");
    eval_cmd->add_option("--embedding", v_embedding,
                         "Precomputed embedding file (classification; skips the built-in backends)");
    eval_cmd->add_option("--n-test", v_n_test, "Held-out triangles (motif)");
    eval_cmd->add_option("--negative-ratio", v_neg_ratio, "Negatives per positive")
        ->capture_default_str();
    eval_cmd->add_option("--np-max", v_np_max, "Largest N for precision@N (0 = all scored)");
    eval_cmd->add_option("--repeats", v_repeats, "Independent runs to average")
        ->capture_default_str();
    eval_cmd->add_option("--train-ratio", v_train_ratio, "Training fraction (classification)")
        ->capture_default_str();
    eval_cmd->add_option("--l2", v_l2, "L2 regularization strength")->capture_default_str();
    eval_cmd->add_option("--report", v_report, "Report JSON path");
    eval_cmd->add_option("--csv", v_csv, "Report CSV path");
    add_backend_flags(eval_cmd, v_flags, true);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Run the planted-partition lemma suite");
    std::string y_grid, y_report;
    int y_lmax = 6, y_samples = 500;
    std::uint64_t y_seed = 0;
    double y_rel = 1e-9, y_abs = 1e-12, y_mc = 0.05;
    int y_tri_m = 10, y_tri_r = 2;
    double y_tri_p = 0.5, y_tri_q = 0.1;
    verify_cmd->add_option("--grid", y_grid, "Grid file with 'm r p q' rows (default: built-in)");
    verify_cmd->add_option("--report", y_report, "Report JSON path");
    verify_cmd->add_option("--l-max", y_lmax, "Highest proximity order")->capture_default_str();
    verify_cmd->add_option("--samples", y_samples, "Sampled graphs for the triangle lemma")
        ->capture_default_str();
    verify_cmd->add_option("--seed", y_seed, "RNG seed")->capture_default_str();
    verify_cmd->add_option("--rel-tol", y_rel, "Relative tolerance, proximity gap")
        ->capture_default_str();
    verify_cmd->add_option("--abs-tol", y_abs, "Absolute tolerance, symmetry")
        ->capture_default_str();
    verify_cmd->add_option("--mc-tol", y_mc, "Relative tolerance, Monte-Carlo means")
        ->capture_default_str();
    verify_cmd->add_option("--tri-m", y_tri_m, "Triangle lemma: nodes per cluster")
        ->capture_default_str();
    verify_cmd->add_option("--tri-r", y_tri_r, "Triangle lemma: clusters")->capture_default_str();
    verify_cmd->add_option("--tri-p", y_tri_p, "Triangle lemma: within probability")
        ->capture_default_str();
    verify_cmd->add_option("--tri-q", y_tri_q, "Triangle lemma: cross probability")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (transform_cmd->parsed())
            return cmd_transform(t_input, t_output, t_lambda, t_stats, t_threads);
        if (embed_cmd->parsed()) return cmd_embed(e_input, e_output, e_flags, e_corpus);
        if (eval_cmd->parsed())
            return cmd_eval(v_task, v_input, v_labels, v_embedding, v_flags, v_n_test, v_neg_ratio,
                            v_np_max, v_repeats, v_train_ratio, v_l2, v_report, v_csv);
        if (verify_cmd->parsed())
            return cmd_verify(y_grid, y_report, y_lmax, y_samples, y_seed, y_rel, y_abs, y_mc,
                              y_tri_m, y_tri_r, y_tri_p, y_tri_q);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const convergence_error& e) {
        std::cerr << "error (embed stage): " << e.what() << " (achieved residual "
                  << e.achieved_residual << ")\n";
        return kExitFail;
    } catch (const sampling_error& e) {
        std::cerr << "error (sampling stage): " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}

}  // namespace h2nt
