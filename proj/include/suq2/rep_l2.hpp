#pragma once

#include "suq2/algebra.hpp"
#include "suq2/linop.hpp"
#include "suq2/qnum.hpp"

namespace suq2 {

/// alpha-hat on a truncated L2(h):
///   e^{(n)}_{ij} -> q^{2n+i+j+1} e^{(n+1/2)}_{i-1/2,j-1/2}
///                 + (1-q^{2n+2i})^{1/2} (1-q^{2n+2j})^{1/2} e^{(n-1/2)}_{i-1/2,j-1/2}
/// Components landing outside the truncated basis are dropped.
SparseOp alpha_hat(const TruncatedSpace& l2, QParam q);

/// beta-hat on a truncated L2(h):
///   e^{(n)}_{ij} -> -q^{n+j} (1-q^{2n+2i+2})^{1/2} e^{(n+1/2)}_{i+1/2,j-1/2}
///                 + q^{n+i} (1-q^{2n+2j})^{1/2} e^{(n-1/2)}_{i+1/2,j-1/2}
/// The second target does not exist when i = n; that component is dropped,
/// so the relations only hold up to a q^{2n}-small boundary defect.
SparseOp beta_hat(const TruncatedSpace& l2, QParam q);

/// The four generator images of the hat representation on one space.
class HatRepresentation {
public:
    HatRepresentation(TruncatedSpace l2, QParam q);

    const TruncatedSpace& space() const noexcept { return space_; }
    QParam q() const noexcept { return q_; }
    const SparseOp& operator()(Generator g) const;

    /// pi-hat(word); only trustworthy on interior(space, length/2).
    SparseOp pi_hat(const GeneratorWord& word) const;

private:
    TruncatedSpace space_;
    QParam q_;
    SparseOp alpha_, alpha_star_, beta_, beta_star_;
};

struct DiracParams {
    unsigned k = 0;
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

/// Which weight the eigenvalue case split reads: j for the left-equivariant
/// family, i for the right-equivariant one.
enum class Equivariance { Left, Right };

/// Diagonal operator e^{(n)}_{ij} -> (a n + b) if -n <= x < n-k, (c n + d) if
/// x in {n-k, ..., n}, with x = j (Left) or x = i (Right).
/// Throws ParameterError unless a*c < 0.
SparseOp dirac_family(const DiracParams& p, const TruncatedSpace& l2, Equivariance side = Equivariance::Left);

/// Eigenvalue of dirac_family at one label (same case split).
double dirac_family_eigenvalue(const DiracParams& p, HalfInt n, HalfInt x);

/// D1: -2n off the top weight, 2n+1 on j = n.
inline constexpr DiracParams kD1{0, -2.0, 0.0, 2.0, 1.0};
/// D2: -2n-1 off the top weight, 2n+1 on j = n.
inline constexpr DiracParams kD2{0, -2.0, -1.0, 2.0, 1.0};

/// Entrywise absolute value of a diagonal operator; ParameterError otherwise.
SparseOp abs_op(const SparseOp& diagonal);

} // namespace suq2
