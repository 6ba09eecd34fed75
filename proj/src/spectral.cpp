#include "h2nt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "h2nt/util.hpp"

namespace h2nt {

namespace {

constexpr std::uint64_t kRestartSeed = 0x5EEDC0FFEE123ULL;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(std::vector<double>& y, double c, const std::vector<double>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

void orthogonalize(std::vector<double>& w, const std::vector<std::vector<double>>& basis) {
    for (const auto& u : basis) axpy(w, -dot(w, u), u);
}

double inf_norm(const SymMatrix& mat) {
    std::vector<double> sums(mat.dim(), 0.0);
    for (int i = 0; i < mat.dim(); ++i) sums[i] = std::fabs(mat.diagonal()[i]);
    for (const auto& e : mat.upper_entries()) {
        sums[e.i] += std::fabs(e.v);
        sums[e.j] += std::fabs(e.v);
    }
    double best = 0.0;
    for (double s : sums) best = std::max(best, s);
    return best;
}

// Implicit-shift QL for a symmetric tridiagonal matrix; rotations are
// accumulated into z (k x k, initialized to identity by the caller).
void tridiag_ql(std::vector<double>& diag, std::vector<double>& off,
                std::vector<std::vector<double>>& z) {
    int k = static_cast<int>(diag.size());
    if (k == 0) return;
    off.push_back(0.0);
    for (int l = 0; l < k; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < k - 1; ++m) {
                double dd = std::fabs(diag[m]) + std::fabs(diag[m + 1]);
                if (std::fabs(off[m]) <= 1e-300 + std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == 64)
                    throw convergence_error("tridiagonal QL failed to converge", std::fabs(off[l]));
                double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
                double r = std::hypot(g, 1.0);
                g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * off[i];
                    double b = c * off[i];
                    r = std::hypot(f, g);
                    off[i + 1] = r;
                    if (r == 0.0) {
                        diag[i + 1] -= p;
                        off[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag[i + 1] - p;
                    r = (diag[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    diag[i + 1] = g + p;
                    g = c * r - b;
                    for (int row = 0; row < k; ++row) {
                        f = z[row][i + 1];
                        z[row][i + 1] = s * z[row][i] + c * f;
                        z[row][i] = c * z[row][i] - s * f;
                    }
                }
                if (r == 0.0 && i >= l) continue;
                diag[l] -= p;
                off[l] = g;
                off[m] = 0.0;
            }
        } while (m != l);
    }
    off.pop_back();
}

void fix_sign(std::vector<double>& v) {
    for (double x : v) {
        if (std::fabs(x) > 1e-12) {
            if (x < 0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

struct RitzPair {
    double value;
    std::vector<double> vector;
    double bound;  // |beta_k s_k| residual estimate, free from the small solve
};

}  // namespace

EigenPairs top_eigenpairs(const SymMatrix& mat, int d, double tol, int max_iter) {
    int n = mat.dim();
    if (d < 1 || d > n) throw validation_error("eigenpair count must satisfy 1 <= d <= n");
    if (tol <= 0) throw validation_error("eigensolver tolerance must be positive");

    double scale = inf_norm(mat);
    double breakdown = 1e-13 * std::max(1.0, scale);

    std::vector<double> values;
    std::vector<std::vector<double>> basis;  // converged eigenvectors
    double best_residual = std::numeric_limits<double>::infinity();
    int stagnant_restarts = 0;
    int restart_index = 0;
    int cap_boost = 1;
    int total_passes = 0;
    const int max_passes = std::max(3 * d + 20, 64);

    auto random_start = [&](int attempt) {
        std::mt19937_64 rng(mix_seed(kRestartSeed, restart_index * 97 + attempt));
        std::vector<double> v(n);
        for (double& x : v) x = uniform01(rng) - 0.5;
        orthogonalize(v, basis);
        orthogonalize(v, basis);
        double nn = norm(v);
        if (nn < 1e-8) return std::vector<double>();
        for (double& x : v) x /= nn;
        return v;
    };

    // One Lanczos pass in the orthogonal complement of `basis`; at most
    // max_iter steps. Returns Ritz pairs sorted by |value| descending.
    auto lanczos_pass = [&](int cap) {
        std::vector<RitzPair> out;
        std::vector<double> v;
        for (int attempt = 0; attempt < 4 && v.empty(); ++attempt) v = random_start(attempt);
        ++restart_index;
        if (v.empty()) return out;

        cap = std::min(cap, max_iter);
        std::vector<std::vector<double>> krylov{v};
        std::vector<double> alphas, betas;
        std::vector<double> w(n);
        double last_beta = 0.0;
        for (int k = 0; k < cap; ++k) {
            mat.matvec(krylov[k].data(), w.data());
            double alpha = dot(w, krylov[k]);
            axpy(w, -alpha, krylov[k]);
            if (k > 0) axpy(w, -betas[k - 1], krylov[k - 1]);
            orthogonalize(w, krylov);
            orthogonalize(w, basis);
            orthogonalize(w, krylov);
            alphas.push_back(alpha);
            double beta = norm(w);
            if (beta < breakdown || k + 1 == cap) {
                last_beta = beta < breakdown ? 0.0 : beta;
                break;
            }
            betas.push_back(beta);
            std::vector<double> next = w;
            for (double& x : next) x /= beta;
            krylov.push_back(std::move(next));
        }
        int k = static_cast<int>(alphas.size());
        if (k == 0) return out;
        std::vector<double> diag = alphas;
        std::vector<double> off = betas;
        std::vector<std::vector<double>> z(k, std::vector<double>(k, 0.0));
        for (int i = 0; i < k; ++i) z[i][i] = 1.0;
        tridiag_ql(diag, off, z);
        for (int t = 0; t < k; ++t) {
            RitzPair rp;
            rp.value = diag[t];
            rp.bound = std::fabs(last_beta * z[k - 1][t]);
            rp.vector.assign(n, 0.0);
            for (int c = 0; c < k; ++c) axpy(rp.vector, z[c][t], krylov[c]);
            double nn = norm(rp.vector);
            if (nn < 1e-12) continue;
            for (double& x : rp.vector) x /= nn;
            out.push_back(std::move(rp));
        }
        std::sort(out.begin(), out.end(), [](const RitzPair& a, const RitzPair& b) {
            double ma = std::fabs(a.value), mb = std::fabs(b.value);
            return ma != mb ? ma > mb : a.value > b.value;
        });
        return out;
    };

    auto residual_of = [&](const RitzPair& rp) {
        std::vector<double> r(n);
        mat.matvec(rp.vector.data(), r.data());
        axpy(r, -rp.value, rp.vector);
        return norm(r);
    };

    // Accepts every converged pair of a pass (the selection guard below keeps
    // the final top-d honest); the beta bound skips hopeless candidates
    // before spending a matvec on the explicit residual.
    auto accept = [&](std::vector<RitzPair>& ritz, double floor_mag) {
        bool accepted = false;
        for (auto& rp : ritz) {
            double gate = tol * std::max(1.0, std::fabs(rp.value));
            if (floor_mag >= 0 && std::fabs(rp.value) <= floor_mag * (1.0 + 1e-12)) break;
            if (rp.bound > 100 * gate) continue;
            double res = residual_of(rp);
            best_residual = std::min(best_residual, res);
            if (res > gate) continue;
            orthogonalize(rp.vector, basis);
            double nn = norm(rp.vector);
            if (nn < 0.7) continue;  // duplicate direction from a previous restart
            for (double& x : rp.vector) x /= nn;
            values.push_back(rp.value);
            basis.push_back(std::move(rp.vector));
            accepted = true;
        }
        return accepted;
    };

    while (static_cast<int>(values.size()) < d) {
        if (total_passes++ >= max_passes)
            throw convergence_error("eigensolver exceeded its restart budget", best_residual);
        int remaining = d - static_cast<int>(values.size());
        int free_dim = n - static_cast<int>(basis.size());
        int cap = std::min(free_dim, std::max(2 * remaining + 20, 40) * cap_boost);
        auto ritz = lanczos_pass(cap);
        if (accept(ritz, -1.0)) {
            stagnant_restarts = 0;
        } else {
            if (++stagnant_restarts >= 3 && cap >= std::min(free_dim, max_iter))
                throw convergence_error("eigensolver stagnated", best_residual);
            cap_boost = std::min(cap_boost * 2, 64);
        }
    }

    // Guard the top-|lambda| selection: peek at the deflated complement and
    // pull in anything larger than the current d-th magnitude.
    for (int guard = 0; guard < 4 && static_cast<int>(basis.size()) < n; ++guard) {
        std::vector<double> mags;
        mags.reserve(values.size());
        for (double v : values) mags.push_back(std::fabs(v));
        std::sort(mags.begin(), mags.end(), std::greater<>());
        double floor_mag = mags[d - 1];
        auto ritz = lanczos_pass(std::min(n - static_cast<int>(basis.size()), std::max(2 * d + 20, 40)));
        if (ritz.empty() || !accept(ritz, floor_mag)) break;
    }

    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ma = std::fabs(values[a]), mb = std::fabs(values[b]);
        return ma != mb ? ma > mb : values[a] > values[b];
    });

    EigenPairs out;
    for (int t = 0; t < d; ++t) {
        out.values.push_back(values[order[t]]);
        std::vector<double> v = std::move(basis[order[t]]);
        fix_sign(v);
        out.vectors.push_back(std::move(v));
    }
    return out;
}

std::vector<double> reweight(const std::vector<double>& values, const std::vector<double>& weights) {
    std::vector<double> out;
    out.reserve(values.size());
    for (double lambda : values) {
        double acc = 0.0;
        for (auto it = weights.rbegin(); it != weights.rend(); ++it) acc = *it + lambda * acc;
        out.push_back(lambda * acc);
    }
    return out;
}

std::vector<double> default_hop_weights(int order) {
    std::vector<double> w(order);
    double v = 1.0;
    for (int i = 0; i < order; ++i) {
        v *= 0.1;
        w[i] = v;
    }
    return w;
}

Embedding embed_spectral(const SymMatrix& q, const SpectralConfig& cfg,
                         const std::vector<long long>& ids) {
    int n = q.dim();
    if (cfg.dim < 1) throw validation_error("embedding dimension must be >= 1");
    if (cfg.order < 1) throw validation_error("proximity order must be >= 1");
    std::vector<double> weights = cfg.weights.empty() ? default_hop_weights(cfg.order) : cfg.weights;
    if (static_cast<int>(weights.size()) != cfg.order)
        throw validation_error("weight list length must equal the proximity order");
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; }))
        throw validation_error("at least one proximity weight must be nonzero");
    if (!ids.empty() && static_cast<int>(ids.size()) != n)
        throw validation_error("id list length must equal the matrix dimension");

    EigenPairs eig = top_eigenpairs(q, cfg.dim, cfg.eig_tol, cfg.max_iter);
    std::vector<double> f = reweight(eig.values, weights);

    Embedding emb;
    emb.n = n;
    emb.d = cfg.dim;
    emb.values.assign(static_cast<std::size_t>(n) * cfg.dim, 0.0);
    emb.ids.resize(n);
    for (int i = 0; i < n; ++i) emb.ids[i] = ids.empty() ? i : ids[i];

    emb.meta.backend = "spectral";
    emb.meta.order = cfg.order;
    emb.meta.weights = weights;
    emb.meta.f_signs.resize(cfg.dim);
    for (int k = 0; k < cfg.dim; ++k) {
        emb.meta.f_signs[k] = f[k] > 0 ? 1 : (f[k] < 0 ? -1 : 0);
        double s = std::sqrt(std::fabs(f[k]));
        for (int i = 0; i < n; ++i) emb.row(i)[k] = eig.vectors[k][i] * s;
    }

    auto rows = q.rows();
    for (int i = 0; i < n; ++i) {
        if (rows[i].empty()) {
            emb.meta.dead_nodes.push_back(i);
            std::fill(emb.row(i), emb.row(i) + emb.d, 0.0);
        }
    }
    return emb;
}

}  // namespace h2nt
