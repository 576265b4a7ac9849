#pragma once

#include "suq2/error.hpp"
#include "suq2/hilbert.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace suq2 {

/// Entries with magnitude below this are never stored.
inline constexpr double kPruneThreshold = 1e-15;

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Real sparse operator between two truncated spaces, stored row-compressed.
/// Columns within a row are sorted; no stored entry is below kPruneThreshold.
class SparseOp {
public:
    SparseOp(TruncatedSpace dom, TruncatedSpace cod); // zero operator

    /// Duplicate (row, col) pairs are summed before pruning.
    static SparseOp from_triplets(TruncatedSpace dom, TruncatedSpace cod, std::vector<Triplet> entries);
    static SparseOp identity(const TruncatedSpace& space);
    static SparseOp diagonal(const TruncatedSpace& space, std::span<const double> values);

    const TruncatedSpace& dom() const noexcept { return dom_; }
    const TruncatedSpace& cod() const noexcept { return cod_; }
    std::size_t rows() const noexcept { return cod_.dim(); }
    std::size_t cols() const noexcept { return dom_.dim(); }
    std::size_t nnz() const noexcept { return values_.size(); }

    std::span<const std::size_t> row_cols(std::size_t row) const;
    std::span<const double> row_values(std::size_t row) const;

    double coeff(std::size_t row, std::size_t col) const;
    std::vector<Triplet> triplets() const;
    bool is_diagonal() const;
    /// Diagonal entries (requires a square operator).
    std::vector<double> diagonal_values() const;

private:
    TruncatedSpace dom_;
    TruncatedSpace cod_;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::size_t> col_idx_;
    std::vector<double> values_;
};

std::vector<double> apply(const SparseOp& op, std::span<const double> v);
/// Transpose product, op^* v.
std::vector<double> apply_adjoint(const SparseOp& op, std::span<const double> v);

/// lhs after rhs; requires lhs.dom() == rhs.cod().
SparseOp compose(const SparseOp& lhs, const SparseOp& rhs);
SparseOp add(const SparseOp& a, const SparseOp& b);
SparseOp subtract(const SparseOp& a, const SparseOp& b);
SparseOp scale(const SparseOp& a, double s);
/// Conjugate transpose; scalars are real so this is the transpose.
SparseOp adjoint(const SparseOp& a);

inline SparseOp operator*(const SparseOp& a, const SparseOp& b) { return compose(a, b); }
inline SparseOp operator+(const SparseOp& a, const SparseOp& b) { return add(a, b); }
inline SparseOp operator-(const SparseOp& a, const SparseOp& b) { return subtract(a, b); }
inline SparseOp operator*(double s, const SparseOp& a) { return scale(a, s); }
inline SparseOp operator-(const SparseOp& a) { return scale(a, -1.0); }

/// T P where P projects the domain onto the given ordinals.
SparseOp restrict_domain(const SparseOp& op, std::span<const std::size_t> cols);
/// P T where P projects the codomain onto the given ordinals.
SparseOp restrict_codomain(const SparseOp& op, std::span<const std::size_t> rows);

double max_abs_entry(const SparseOp& op);

struct NormOptions {
    double rel_tol = 1e-10;
    std::size_t max_iterations = 100000;
};

/// Non-convergence of the power iteration; carries the last iterate.
class ConvergenceError : public DiagnosticError {
public:
    ConvergenceError(std::vector<double> last_iterate, double last_estimate, std::size_t iterations);

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
    double last_estimate() const noexcept { return last_estimate_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::vector<double> last_iterate_;
    double last_estimate_;
    std::size_t iterations_;
};

/// Largest singular value by power iteration on T^*T from a fixed
/// deterministic start vector.
double op_norm(const SparseOp& op, const NormOptions& options = {});

/// sigma_max(Q_n T), Q_n the projection of the codomain onto level n.
double block_norm(const SparseOp& op, HalfInt level);

/// block_norm for every codomain level 0, 1/2, ..., n_max.
std::vector<std::pair<HalfInt, double>> level_block_norms(const SparseOp& op);

/// Coordinate-triplet dump. Header lines start with '#'.
void write_triplets(std::ostream& out, const SparseOp& op);
SparseOp read_triplets(std::istream& in);

} // namespace suq2
