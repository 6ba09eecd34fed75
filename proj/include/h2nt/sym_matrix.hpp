#ifndef H2NT_SYM_MATRIX_HPP
#define H2NT_SYM_MATRIX_HPP

#include <cstdint>
#include <map>
#include <vector>

namespace h2nt {

// Sparse symmetric real matrix. Only the strict upper triangle is stored
// (entries may be explicit zeros, which keeps sparsity patterns comparable)
// plus a dense diagonal.
class SymMatrix {
public:
    struct Entry {
        int i, j;
        double v;
    };

    SymMatrix() = default;
    explicit SymMatrix(int n);

    int dim() const { return n_; }

    void set(int i, int j, double v);
    void add(int i, int j, double v);
    double at(int i, int j) const;
    bool stored(int i, int j) const;

    // Largest stored value; 0 for a matrix with no stored entries.
    double max_entry() const;

    // Stored strict-upper entries (structural, zeros included), sorted by (i, j).
    std::vector<Entry> upper_entries() const;
    std::size_t stored_upper_count() const { return upper_.size(); }
    // Strict-upper entries with v != 0.
    std::size_t offdiag_nonzeros() const;

    const std::vector<double>& diagonal() const { return diag_; }

    std::vector<double> row_sums() const;

    // Full symmetric row views (diagonal included when nonzero), sorted by column.
    std::vector<std::vector<std::pair<int, double>>> rows() const;

    // y = M x (y must hold dim() entries; overwritten).
    void matvec(const double* x, double* y) const;

    SymMatrix scaled(double s) const;

    // this + s * other; throws on dimension mismatch.
    SymMatrix plus_scaled(const SymMatrix& other, double s) const;

    // True when both matrices store exactly the same strict-upper pattern.
    bool same_support(const SymMatrix& other) const;

private:
    static std::uint64_t key(int i, int j) {
        return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
    }
    void check(int i, int j) const;

    int n_ = 0;
    std::vector<double> diag_;
    std::map<std::uint64_t, double> upper_;
};

// mat^order by repeated multiplication; order >= 1. Dense path (long double
// accumulation) up to the crossover dimension, row-sparse products beyond it.
SymMatrix matrix_power(const SymMatrix& mat, int order);

inline constexpr int kDensePowerCrossover = 4096;

// Crossover exposed so tests can force the sparse path on small matrices.
SymMatrix matrix_power_with_crossover(const SymMatrix& mat, int order, int dense_crossover);

}  // namespace h2nt

#endif
