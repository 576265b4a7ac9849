#pragma once

#include "suq2/algebra.hpp"
#include "suq2/linop.hpp"
#include "suq2/qnum.hpp"

#include <array>

namespace suq2 {

/// 2x2 real block acting on the pair (u, d). Entry (r, c) is the coefficient
/// of target component r in the image of source component c.
struct CoeffMatrix {
    static constexpr std::size_t kUp = 0;
    static constexpr std::size_t kDown = 1;

    std::array<std::array<double, 2>, 2> m{};

    double& operator()(std::size_t r, std::size_t c) { return m[r][c]; }
    double operator()(std::size_t r, std::size_t c) const { return m[r][c]; }

    CoeffMatrix transpose() const;
    CoeffMatrix operator*(double s) const;
    bool is_zero() const;
    double max_abs() const;
    bool operator==(const CoeffMatrix&) const = default;
};

double max_abs_diff(const CoeffMatrix& a, const CoeffMatrix& b);

enum class CoeffKind { APlus, AMinus, BPlus, BMinus };

std::string_view to_string(CoeffKind k); // "a+", "a-", "b+", "b-"

/// The displayed coefficient blocks of pi'(alpha*) (a+/-) and pi'(-beta)
/// (b+/-) at label v^n_{ij}. Labels must satisfy i in {-n..n},
/// j in {-n-1/2..n+1/2}; otherwise ParameterError.
CoeffMatrix a_plus(HalfInt n, HalfInt i, HalfInt j, QParam q);
CoeffMatrix a_minus(HalfInt n, HalfInt i, HalfInt j, QParam q);
CoeffMatrix b_plus(HalfInt n, HalfInt i, HalfInt j, QParam q);
CoeffMatrix b_minus(HalfInt n, HalfInt i, HalfInt j, QParam q);
CoeffMatrix coeff_matrix(CoeffKind kind, HalfInt n, HalfInt i, HalfInt j, QParam q);

/// Tilde blocks (for pi'(alpha), pi'(-beta*)):
///   a~(+/-)_{nij} = (a(-/+)_{n+/-1/2, i-1/2, j-1/2})^T
///   b~(+/-)_{nij} = (b(-/+)_{n+/-1/2, i-1/2, j+1/2})^T
/// A referenced label outside the valid range gives the zero matrix.
CoeffMatrix tilde_coeffs(CoeffKind kind, HalfInt n, HalfInt i, HalfInt j, QParam q);

/// pi' on the truncated doubled space. Built from the displayed blocks:
/// pi'(alpha*) from a+/-, pi'(alpha) from a~+/-, pi'(beta) = -(b+/- operator),
/// pi'(beta*) = -(b~+/- operator). d-components at j = +-(n+1/2) do not exist.
SparseOp pi_prime(Generator g, const TruncatedSpace& dbl, QParam q);

class PrimeRepresentation {
public:
    PrimeRepresentation(TruncatedSpace dbl, QParam q);

    const TruncatedSpace& space() const noexcept { return space_; }
    QParam q() const noexcept { return q_; }
    const SparseOp& operator()(Generator g) const;
    SparseOp pi_prime(const GeneratorWord& word) const;

private:
    TruncatedSpace space_;
    QParam q_;
    std::array<SparseOp, 4> ops_;
};

/// D u^n_{ij} = (2n+1) u^n_{ij}, D d^n_{ij} = -2n d^n_{ij}.
SparseOp dirac_D(const TruncatedSpace& dbl);

} // namespace suq2
