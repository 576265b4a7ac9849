#pragma once

#include "suq2/algebra.hpp"
#include "suq2/linop.hpp"
#include "suq2/rep_double.hpp"
#include "suq2/report.hpp"

#include <span>
#include <utility>
#include <vector>

namespace suq2 {

/// The permutation U : L2 + L2 -> H
///   e^{(n)}_{ij} + 0 -> d^n_{i,j+1/2}   (j < n)
///   e^{(n)}_{in} + 0 -> u^n_{i,n+1/2}
///   0 + e^{(n)}_{ij} -> u^n_{i,j-1/2}
SparseOp build_U(HalfInt n_max);

/// a + b on the L2Pair space built over a.dom().
SparseOp direct_sum(const SparseOp& a, const SparseOp& b);

struct IntertwineCheck {
    double max_deviation = 0.0;      // max |U (D1 + |D2|) U^* - D| entry
    double unitarity_deviation = 0.0; // max entry of U^*U - I and UU^* - I
};

/// Deviation of U (D1 + |D2|) U^* from D for an arbitrary candidate U.
IntertwineCheck intertwine_deviation(const SparseOp& u);

/// Exact check with the canonical U. Suite "decompose"; passes iff both
/// deviations are exactly zero.
VerificationReport check_dirac_intertwine(HalfInt n_max, double q_label = 0.0);

/// U (pi-hat(a) + pi-hat(a)) U^* - pi'(a) for a in {alpha*, beta}.
SparseOp kq_defect(Generator gen, HalfInt n_max, QParam q);

/// Log-linear least-squares fit of per-level block norms.
struct DecayFit {
    std::vector<HalfInt> levels;     // levels that entered the fit
    std::vector<double> norms;
    double rate = 0.0;      // -slope of ln(norm) per unit n
    double intercept = 0.0;
    double residual = 0.0;  // rms of ln-residuals
    std::size_t censored = 0;

    /// rate measured in units of ln(1/q)
    double rate_in_units(QParam q) const { return rate / q.log_inverse(); }
};

inline constexpr double kNormFloor = 1e-14;

/// Fits ln(norm) = intercept - rate * n over the points with norm > floor.
/// DiagnosticError if fewer than three points survive.
DecayFit decay_fit(std::span<const std::pair<HalfInt, double>> norms, double floor = kNormFloor);

/// Keeps levels in [lo, hi] before fitting.
DecayFit decay_fit(std::span<const std::pair<HalfInt, double>> norms, HalfInt lo, HalfInt hi,
                   double floor = kNormFloor);

/// Leading form of the displayed expansion (the O(q^{2n}) term dropped).
/// For b+/- the unsimplified first line is used unless simplified = true.
CoeffMatrix leading_form(CoeffKind kind, HalfInt n, HalfInt i, HalfInt j, QParam q, bool simplified = false);

struct ResidualPoint {
    HalfInt n;
    double residual = 0.0; // max over valid (i, j) and entries of |exact - leading|
    double scaled = 0.0;   // residual / q^{2n}
};

/// Per-level residual of the exact coefficient block against its leading
/// form, for levels lo, lo+1/2, ..., hi. Entries touching an absent
/// d-component or an out-of-range target are skipped.
std::vector<ResidualPoint> asymptotic_residual(CoeffKind kind, HalfInt lo, HalfInt hi, QParam q,
                                               bool simplified = false);

} // namespace suq2
