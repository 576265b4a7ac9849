#include "suq2/rep_l2.hpp"

#include "suq2/error.hpp"

#include <cmath>

namespace suq2 {

namespace {

void require_l2(const TruncatedSpace& s, const char* what)
{
    if (s.kind() != SpaceKind::L2) throw ParameterError(std::string(what) + " acts on an L2 space");
}

double root_one_minus(double e, QParam q) { return std::sqrt(std::max(0.0, 1.0 - q_power(e, q))); }

void push_if_present(std::vector<Triplet>& out, const TruncatedSpace& s, std::size_t col, HalfInt n, HalfInt i,
                     HalfInt j, double value)
{
    if (value == 0.0) return;
    if (auto row = s.find(BasisLabel(Sector::Plain, n, i, j))) out.push_back({*row, col, value});
}

} // namespace

SparseOp alpha_hat(const TruncatedSpace& l2, QParam q)
{
    require_l2(l2, "alpha_hat");
    std::vector<Triplet> t;
    const auto labels = l2.labels();
    for (std::size_t c = 0; c < labels.size(); ++c) {
        const auto& [sec, n, i, j] = labels[c];
        const double nn = n.value(), ii = i.value(), jj = j.value();
        push_if_present(t, l2, c, n + kHalf, i - kHalf, j - kHalf, q_power(2 * nn + ii + jj + 1, q));
        push_if_present(t, l2, c, n - kHalf, i - kHalf, j - kHalf,
                        root_one_minus(2 * nn + 2 * ii, q) * root_one_minus(2 * nn + 2 * jj, q));
    }
    return SparseOp::from_triplets(l2, l2, std::move(t));
}

SparseOp beta_hat(const TruncatedSpace& l2, QParam q)
{
    require_l2(l2, "beta_hat");
    std::vector<Triplet> t;
    const auto labels = l2.labels();
    for (std::size_t c = 0; c < labels.size(); ++c) {
        const auto& [sec, n, i, j] = labels[c];
        const double nn = n.value(), ii = i.value(), jj = j.value();
        push_if_present(t, l2, c, n + kHalf, i + kHalf, j - kHalf,
                        -q_power(nn + jj, q) * root_one_minus(2 * nn + 2 * ii + 2, q));
        push_if_present(t, l2, c, n - kHalf, i + kHalf, j - kHalf,
                        q_power(nn + ii, q) * root_one_minus(2 * nn + 2 * jj, q));
    }
    return SparseOp::from_triplets(l2, l2, std::move(t));
}

HatRepresentation::HatRepresentation(TruncatedSpace l2, QParam q)
    : space_(std::move(l2)), q_(q), alpha_(alpha_hat(space_, q)), alpha_star_(adjoint(alpha_)),
      beta_(beta_hat(space_, q)), beta_star_(adjoint(beta_))
{
}

const SparseOp& HatRepresentation::operator()(Generator g) const
{
    switch (g) {
    case Generator::Alpha: return alpha_;
    case Generator::AlphaStar: return alpha_star_;
    case Generator::Beta: return beta_;
    case Generator::BetaStar: return beta_star_;
    }
    return alpha_;
}

SparseOp HatRepresentation::pi_hat(const GeneratorWord& word) const
{
    return evaluate(word, space_, [this](Generator g) -> const SparseOp& { return (*this)(g); });
}

double dirac_family_eigenvalue(const DiracParams& p, HalfInt n, HalfInt x)
{
    const HalfInt split = n - HalfInt::from_int(static_cast<std::int32_t>(p.k));
    const double nn = n.value();
    return x < split ? p.a * nn + p.b : p.c * nn + p.d;
}

SparseOp dirac_family(const DiracParams& p, const TruncatedSpace& l2, Equivariance side)
{
    require_l2(l2, "dirac_family");
    if (!(p.a * p.c < 0.0)) {
        throw ParameterError("dirac_family requires a*c < 0 (a=" + std::to_string(p.a) + ", c=" + std::to_string(p.c) + ")");
    }
    std::vector<double> diag;
    diag.reserve(l2.dim());
    for (const auto& l : l2.labels()) {
        diag.push_back(dirac_family_eigenvalue(p, l.n, side == Equivariance::Left ? l.j : l.i));
    }
    return SparseOp::diagonal(l2, diag);
}

SparseOp abs_op(const SparseOp& diagonal)
{
    if (!diagonal.is_diagonal()) throw ParameterError("abs_op expects a diagonal operator");
    auto d = diagonal.diagonal_values();
    for (auto& v : d) v = std::fabs(v);
    return SparseOp::diagonal(diagonal.dom(), d);
}

} // namespace suq2
