#include "h2nt/sym_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "h2nt/util.hpp"

namespace h2nt {

SymMatrix::SymMatrix(int n) : n_(n) {
    if (n < 0) throw validation_error("matrix dimension must be nonnegative");
    diag_.assign(n, 0.0);
}

void SymMatrix::check(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw validation_error("matrix index out of range");
}

void SymMatrix::set(int i, int j, double v) {
    check(i, j);
    if (i == j) {
        diag_[i] = v;
        return;
    }
    if (i > j) std::swap(i, j);
    upper_[key(i, j)] = v;
}

void SymMatrix::add(int i, int j, double v) {
    check(i, j);
    if (i == j) {
        diag_[i] += v;
        return;
    }
    if (i > j) std::swap(i, j);
    upper_[key(i, j)] += v;
}

double SymMatrix::at(int i, int j) const {
    check(i, j);
    if (i == j) return diag_[i];
    if (i > j) std::swap(i, j);
    auto it = upper_.find(key(i, j));
    return it == upper_.end() ? 0.0 : it->second;
}

bool SymMatrix::stored(int i, int j) const {
    check(i, j);
    if (i == j) return true;
    if (i > j) std::swap(i, j);
    return upper_.count(key(i, j)) > 0;
}

double SymMatrix::max_entry() const {
    double best = 0.0;
    for (double d : diag_) best = std::max(best, d);
    for (const auto& [k, v] : upper_) {
        (void)k;
        best = std::max(best, v);
    }
    return best;
}

std::vector<SymMatrix::Entry> SymMatrix::upper_entries() const {
    std::vector<Entry> out;
    out.reserve(upper_.size());
    for (const auto& [k, v] : upper_)
        out.push_back({static_cast<int>(k >> 32), static_cast<int>(k & 0xFFFFFFFFu), v});
    return out;
}

std::size_t SymMatrix::offdiag_nonzeros() const {
    std::size_t count = 0;
    for (const auto& [k, v] : upper_) {
        (void)k;
        if (v != 0.0) ++count;
    }
    return count;
}

std::vector<double> SymMatrix::row_sums() const {
    std::vector<double> sums(diag_.begin(), diag_.end());
    for (const auto& [k, v] : upper_) {
        int i = static_cast<int>(k >> 32);
        int j = static_cast<int>(k & 0xFFFFFFFFu);
        sums[i] += v;
        sums[j] += v;
    }
    return sums;
}

std::vector<std::vector<std::pair<int, double>>> SymMatrix::rows() const {
    std::vector<std::vector<std::pair<int, double>>> out(n_);
    for (int i = 0; i < n_; ++i)
        if (diag_[i] != 0.0) out[i].emplace_back(i, diag_[i]);
    for (const auto& [k, v] : upper_) {
        if (v == 0.0) continue;
        int i = static_cast<int>(k >> 32);
        int j = static_cast<int>(k & 0xFFFFFFFFu);
        out[i].emplace_back(j, v);
        out[j].emplace_back(i, v);
    }
    for (auto& row : out) std::sort(row.begin(), row.end());
    return out;
}

void SymMatrix::matvec(const double* x, double* y) const {
    for (int i = 0; i < n_; ++i) y[i] = diag_[i] * x[i];
    for (const auto& [k, v] : upper_) {
        int i = static_cast<int>(k >> 32);
        int j = static_cast<int>(k & 0xFFFFFFFFu);
        y[i] += v * x[j];
        y[j] += v * x[i];
    }
}

SymMatrix SymMatrix::scaled(double s) const {
    SymMatrix out(n_);
    for (int i = 0; i < n_; ++i) out.diag_[i] = diag_[i] * s;
    for (const auto& [k, v] : upper_) out.upper_[k] = v * s;
    return out;
}

SymMatrix SymMatrix::plus_scaled(const SymMatrix& other, double s) const {
    if (n_ != other.n_) throw validation_error("matrix dimension mismatch");
    SymMatrix out(n_);
    for (int i = 0; i < n_; ++i) out.diag_[i] = diag_[i] + s * other.diag_[i];
    out.upper_ = upper_;
    for (auto& [k, v] : out.upper_) {
        auto it = other.upper_.find(k);
        if (it != other.upper_.end()) v += s * it->second;
    }
    for (const auto& [k, v] : other.upper_)
        if (!upper_.count(k)) out.upper_[k] = s * v;
    return out;
}

bool SymMatrix::same_support(const SymMatrix& other) const {
    if (n_ != other.n_ || upper_.size() != other.upper_.size()) return false;
    auto a = upper_.begin();
    auto b = other.upper_.begin();
    for (; a != upper_.end(); ++a, ++b)
        if (a->first != b->first) return false;
    return true;
}

namespace {

// Dense product C = P * A restricted to the upper triangle, mirrored; long
// double accumulation keeps the lemma-scale power gaps well inside 1e-9.
void dense_multiply(const std::vector<double>& p, const std::vector<double>& a, int n,
                    std::vector<double>& c) {
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            long double acc = 0.0L;
            const double* prow = p.data() + static_cast<std::size_t>(i) * n;
            const double* acol = a.data() + static_cast<std::size_t>(j) * n;  // A symmetric: col j == row j
            for (int z = 0; z < n; ++z) acc += static_cast<long double>(prow[z]) * acol[z];
            double v = static_cast<double>(acc);
            c[static_cast<std::size_t>(i) * n + j] = v;
            c[static_cast<std::size_t>(j) * n + i] = v;
        }
    }
}

SymMatrix dense_power(const SymMatrix& mat, int order) {
    int n = mat.dim();
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] = mat.diagonal()[i];
    for (const auto& e : mat.upper_entries()) {
        a[static_cast<std::size_t>(e.i) * n + e.j] = e.v;
        a[static_cast<std::size_t>(e.j) * n + e.i] = e.v;
    }
    std::vector<double> p = a;
    std::vector<double> c(a.size());
    for (int step = 1; step < order; ++step) {
        dense_multiply(p, a, n, c);
        std::swap(p, c);
    }
    SymMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double v = p[static_cast<std::size_t>(i) * n + j];
            if (i == j || v != 0.0) out.set(i, j, v);
        }
    }
    return out;
}

SymMatrix sparse_power(const SymMatrix& mat, int order) {
    int n = mat.dim();
    auto base_rows = mat.rows();
    auto p_rows = base_rows;
    for (int step = 1; step < order; ++step) {
        std::vector<std::vector<std::pair<int, double>>> next(n);
        std::vector<double> acc(n, 0.0);
        std::vector<char> seen(n, 0);
        std::vector<int> touched;
        for (int i = 0; i < n; ++i) {
            touched.clear();
            for (const auto& [z, pv] : p_rows[i]) {
                for (const auto& [j, av] : base_rows[z]) {
                    if (j < i) continue;
                    if (!seen[j]) {
                        seen[j] = 1;
                        touched.push_back(j);
                    }
                    acc[j] += pv * av;
                }
            }
            std::sort(touched.begin(), touched.end());
            for (int j : touched) {
                if (acc[j] != 0.0) {
                    next[i].emplace_back(j, acc[j]);
                    if (j != i) next[j].emplace_back(i, acc[j]);
                }
                acc[j] = 0.0;
                seen[j] = 0;
            }
        }
        for (auto& row : next) std::sort(row.begin(), row.end());
        p_rows = std::move(next);
    }
    SymMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (const auto& [j, v] : p_rows[i])
            if (j >= i) out.set(i, j, v);
    return out;
}

}  // namespace

SymMatrix matrix_power_with_crossover(const SymMatrix& mat, int order, int dense_crossover) {
    if (order < 1) throw validation_error("matrix power order must be >= 1");
    if (mat.dim() <= dense_crossover) return dense_power(mat, order);
    return sparse_power(mat, order);
}

SymMatrix matrix_power(const SymMatrix& mat, int order) {
    return matrix_power_with_crossover(mat, order, kDensePowerCrossover);
}

}  // namespace h2nt
