#include "h2nt/embedding.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "h2nt/util.hpp"

namespace h2nt {

std::uint64_t EmbeddingMeta::config_hash() const {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xFF;
            h *= 1099511628211ULL;
        }
    };
    for (char c : backend) mix(static_cast<unsigned char>(c));
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(double));
    std::memcpy(&bits, &lambda, 8);
    mix(bits);
    mix(static_cast<std::uint64_t>(order));
    for (double w : weights) {
        std::memcpy(&bits, &w, 8);
        mix(bits);
    }
    mix(seed);
    return h;
}

double pair_score(const Embedding& emb, int i, int j, bool plain_dot) {
    if (i < 0 || i >= emb.n || j < 0 || j >= emb.n)
        throw validation_error("pair_score node index out of range");
    const double* a = emb.row(i);
    const double* b = emb.row(j);
    if (!plain_dot && !emb.meta.f_signs.empty()) {
        double s = 0.0;
        for (int k = 0; k < emb.d; ++k) s += emb.meta.f_signs[k] * a[k] * b[k];
        return s;
    }
    double s = 0.0;
    for (int k = 0; k < emb.d; ++k) s += a[k] * b[k];
    return s;
}

std::string embedding_to_text(const Embedding& emb) {
    std::string out = std::to_string(emb.n) + " " + std::to_string(emb.d) + "\n";
    char buf[64];
    for (int i = 0; i < emb.n; ++i) {
        out += std::to_string(emb.ids[i]);
        const double* r = emb.row(i);
        for (int k = 0; k < emb.d; ++k) {
            std::snprintf(buf, sizeof(buf), " %.9g", r[k]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

Embedding embedding_from_text(const std::string& text) {
    std::istringstream in(text);
    Embedding emb;
    if (!(in >> emb.n >> emb.d) || emb.n < 0 || emb.d < 1)
        throw parse_error("embedding file: bad header");
    emb.values.assign(static_cast<std::size_t>(emb.n) * emb.d, 0.0);
    emb.ids.resize(emb.n);
    for (int i = 0; i < emb.n; ++i) {
        if (!(in >> emb.ids[i])) throw parse_error("embedding file: truncated at row " + std::to_string(i));
        double* r = emb.row(i);
        for (int k = 0; k < emb.d; ++k)
            if (!(in >> r[k])) throw parse_error("embedding file: truncated at row " + std::to_string(i));
    }
    return emb;
}

void save_embedding_file(const Embedding& emb, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write embedding file: " + path.string());
    out << embedding_to_text(emb);
}

Embedding load_embedding_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open embedding file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return embedding_from_text(ss.str());
}

std::string meta_to_json(const Embedding& emb) {
    nlohmann::ordered_json j;
    j["backend"] = emb.meta.backend;
    j["n"] = emb.n;
    j["dim"] = emb.d;
    j["lambda"] = emb.meta.lambda;
    j["order"] = emb.meta.order;
    j["weights"] = emb.meta.weights;
    j["seed"] = emb.meta.seed;
    j["f_signs"] = emb.meta.f_signs;
    j["dead_nodes"] = emb.meta.dead_nodes;
    j["config_hash"] = emb.meta.config_hash();
    return j.dump(2) + "\n";
}

void save_meta_file(const Embedding& emb, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write meta file: " + path.string());
    out << meta_to_json(emb);
}

}  // namespace h2nt
