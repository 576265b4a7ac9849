#include "suq2/rep_double.hpp"

#include "suq2/error.hpp"

#include <algorithm>
#include <cmath>

namespace suq2 {

CoeffMatrix CoeffMatrix::transpose() const
{
    CoeffMatrix t;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) t.m[c][r] = m[r][c];
    return t;
}

CoeffMatrix CoeffMatrix::operator*(double s) const
{
    CoeffMatrix t = *this;
    for (auto& row : t.m)
        for (auto& v : row) v *= s;
    return t;
}

bool CoeffMatrix::is_zero() const { return max_abs() == 0.0; }

double CoeffMatrix::max_abs() const
{
    double x = 0.0;
    for (const auto& row : m)
        for (double v : row) x = std::max(x, std::fabs(v));
    return x;
}

double max_abs_diff(const CoeffMatrix& a, const CoeffMatrix& b)
{
    double x = 0.0;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) x = std::max(x, std::fabs(a.m[r][c] - b.m[r][c]));
    return x;
}

std::string_view to_string(CoeffKind k)
{
    switch (k) {
    case CoeffKind::APlus: return "a+";
    case CoeffKind::AMinus: return "a-";
    case CoeffKind::BPlus: return "b+";
    case CoeffKind::BMinus: return "b-";
    }
    return "?";
}

namespace {

constexpr auto U = CoeffMatrix::kUp;
constexpr auto D = CoeffMatrix::kDown;

bool valid_v_label(HalfInt n, HalfInt i, HalfInt j)
{
    return is_valid_label(BasisLabel(Sector::Up, n, i, j));
}

void require_v_label(HalfInt n, HalfInt i, HalfInt j)
{
    if (!valid_v_label(n, i, j)) {
        throw ParameterError("invalid label v^n_ij with n=" + n.str() + ", i=" + i.str() + ", j=" + j.str());
    }
}

struct Ctx {
    QParam q;
    double pw(double e) const { return q_power(e, q); }
    double qn(HalfInt m) const { return q_number(m, q); }
    double rt(HalfInt m) const { return q_number_root(m, q); }
};

HalfInt h(std::int32_t twice) { return HalfInt::from_twice(twice); }

// Common prefactor q^{(i+j-1/2)/2}.
double weight_prefactor(const Ctx& c, HalfInt i, HalfInt j) { return c.pw((i.value() + j.value() - 0.5) / 2.0); }

} // namespace

CoeffMatrix a_plus(HalfInt n, HalfInt i, HalfInt j, QParam q)
{
    require_v_label(n, i, j);
    const Ctx c{q};
    const double nn = n.value();
    const double pre = weight_prefactor(c, i, j) * c.rt(n + i + kOne);
    CoeffMatrix a;
    a(U, U) = c.pw(-nn - 0.5) * c.rt(n + j + h(3)) / c.qn(n + n + h(4));
    a(D, U) = c.pw(0.5) * c.rt(n - j + kHalf) / (c.qn(n + n + kOne) * c.qn(n + n + h(4)));
    a(D, D) = c.pw(-nn) * c.rt(n + j + kHalf) / c.qn(n + n + kOne);
    return a * pre;
}

CoeffMatrix a_minus(HalfInt n, HalfInt i, HalfInt j, QParam q)
{
    require_v_label(n, i, j);
    if (n.twice == 0) return {}; // prefactor [n-i]^{1/2} = [0]^{1/2}
    const Ctx c{q};
    const double nn = n.value();
    const double pre = weight_prefactor(c, i, j) * c.rt(n - i);
    CoeffMatrix a;
    a(U, U) = c.pw(nn + 1.0) * c.rt(n - j + kHalf) / c.qn(n + n + kOne);
    a(U, D) = -c.pw(0.5) * c.rt(n + j + kHalf) / (c.qn(n + n) * c.qn(n + n + kOne));
    a(D, D) = c.pw(nn + 0.5) * c.rt(n - j - kHalf) / c.qn(n + n);
    return a * pre;
}

CoeffMatrix b_plus(HalfInt n, HalfInt i, HalfInt j, QParam q)
{
    require_v_label(n, i, j);
    const Ctx c{q};
    const double nn = n.value();
    const double pre = weight_prefactor(c, i, j) * c.rt(n + i + kOne);
    CoeffMatrix b;
    b(U, U) = c.rt(n - j + h(3)) / c.qn(n + n + h(4));
    b(D, U) = -c.pw(-nn - 1.0) * c.rt(n + j + kHalf) / (c.qn(n + n + kOne) * c.qn(n + n + h(4)));
    b(D, D) = c.pw(-0.5) * c.rt(n - j + kHalf) / c.qn(n + n + kOne);
    return b * pre;
}

CoeffMatrix b_minus(HalfInt n, HalfInt i, HalfInt j, QParam q)
{
    require_v_label(n, i, j);
    if (n.twice == 0) return {};
    const Ctx c{q};
    const double nn = n.value();
    const double pre = weight_prefactor(c, i, j) * c.rt(n - i);
    CoeffMatrix b;
    b(U, U) = -c.pw(-0.5) * c.rt(n + j + kHalf) / c.qn(n + n + kOne);
    b(U, D) = -c.pw(nn) * c.rt(n - j + kHalf) / (c.qn(n + n) * c.qn(n + n + kOne));
    b(D, D) = -c.rt(n + j - kHalf) / c.qn(n + n);
    return b * pre;
}

CoeffMatrix coeff_matrix(CoeffKind kind, HalfInt n, HalfInt i, HalfInt j, QParam q)
{
    switch (kind) {
    case CoeffKind::APlus: return a_plus(n, i, j, q);
    case CoeffKind::AMinus: return a_minus(n, i, j, q);
    case CoeffKind::BPlus: return b_plus(n, i, j, q);
    case CoeffKind::BMinus: return b_minus(n, i, j, q);
    }
    return {};
}

CoeffMatrix tilde_coeffs(CoeffKind kind, HalfInt n, HalfInt i, HalfInt j, QParam q)
{
    const bool plus = kind == CoeffKind::APlus || kind == CoeffKind::BPlus;
    const bool is_a = kind == CoeffKind::APlus || kind == CoeffKind::AMinus;
    const HalfInt m = plus ? n + kHalf : n - kHalf;
    const HalfInt ii = i - kHalf;
    const HalfInt jj = is_a ? j - kHalf : j + kHalf;
    if (!valid_v_label(m, ii, jj)) return {};
    CoeffKind ref;
    if (is_a) ref = plus ? CoeffKind::AMinus : CoeffKind::APlus;
    else ref = plus ? CoeffKind::BMinus : CoeffKind::BPlus;
    return coeff_matrix(ref, m, ii, jj, q).transpose();
}

namespace {

struct Branches {
    HalfInt di, dj; // weight shift; n moves by +1/2 (plus) or -1/2 (minus)
    CoeffMatrix (*plus)(HalfInt, HalfInt, HalfInt, QParam);
    CoeffMatrix (*minus)(HalfInt, HalfInt, HalfInt, QParam);
    double sign;
};

CoeffMatrix at_plus(HalfInt n, HalfInt i, HalfInt j, QParam q) { return tilde_coeffs(CoeffKind::APlus, n, i, j, q); }
CoeffMatrix at_minus(HalfInt n, HalfInt i, HalfInt j, QParam q) { return tilde_coeffs(CoeffKind::AMinus, n, i, j, q); }
CoeffMatrix bt_plus(HalfInt n, HalfInt i, HalfInt j, QParam q) { return tilde_coeffs(CoeffKind::BPlus, n, i, j, q); }
CoeffMatrix bt_minus(HalfInt n, HalfInt i, HalfInt j, QParam q) { return tilde_coeffs(CoeffKind::BMinus, n, i, j, q); }

Branches branches(Generator g)
{
    switch (g) {
    case Generator::AlphaStar: return {kHalf, kHalf, a_plus, a_minus, 1.0};
    case Generator::Beta: return {kHalf, -kHalf, b_plus, b_minus, -1.0};
    case Generator::Alpha: return {-kHalf, -kHalf, at_plus, at_minus, 1.0};
    case Generator::BetaStar: return {-kHalf, kHalf, bt_plus, bt_minus, -1.0};
    }
    return {};
}

} // namespace

SparseOp pi_prime(Generator g, const TruncatedSpace& dbl, QParam q)
{
    if (dbl.kind() != SpaceKind::Double) throw ParameterError("pi_prime acts on the Double space");
    const auto br = branches(g);
    std::vector<Triplet> t;

    auto component = [&](HalfInt n, HalfInt i, HalfInt j, std::size_t comp) -> std::optional<std::size_t> {
        return dbl.find(BasisLabel(comp == U ? Sector::Up : Sector::Down, n, i, j));
    };

    for (HalfInt n{0}; n <= dbl.n_max(); n += kHalf) {
        for (HalfInt i = -n; i <= n; i += kOne) {
            for (HalfInt j = -n - kHalf; j <= n + kHalf; j += kOne) {
                const HalfInt ti = i + br.di;
                const HalfInt tj = j + br.dj;
                for (int branch = 0; branch < 2; ++branch) {
                    const HalfInt m = branch == 0 ? n + kHalf : n - kHalf;
                    if (!valid_v_label(m, ti, tj)) continue;
                    const CoeffMatrix cm = (branch == 0 ? br.plus : br.minus)(n, i, j, q);
                    for (std::size_t r = 0; r < 2; ++r) {
                        const auto row = component(m, ti, tj, r);
                        if (!row) continue;
                        for (std::size_t c = 0; c < 2; ++c) {
                            const auto col = component(n, i, j, c);
                            if (!col || cm(r, c) == 0.0) continue;
                            t.push_back({*row, *col, br.sign * cm(r, c)});
                        }
                    }
                }
            }
        }
    }
    return SparseOp::from_triplets(dbl, dbl, std::move(t));
}

PrimeRepresentation::PrimeRepresentation(TruncatedSpace dbl, QParam q)
    : space_(std::move(dbl)), q_(q),
      ops_{suq2::pi_prime(Generator::Alpha, space_, q), suq2::pi_prime(Generator::AlphaStar, space_, q),
           suq2::pi_prime(Generator::Beta, space_, q), suq2::pi_prime(Generator::BetaStar, space_, q)}
{
}

const SparseOp& PrimeRepresentation::operator()(Generator g) const { return ops_[static_cast<std::size_t>(g)]; }

SparseOp PrimeRepresentation::pi_prime(const GeneratorWord& word) const
{
    return evaluate(word, space_, [this](Generator g) -> const SparseOp& { return (*this)(g); });
}

SparseOp dirac_D(const TruncatedSpace& dbl)
{
    if (dbl.kind() != SpaceKind::Double) throw ParameterError("dirac_D acts on the Double space");
    std::vector<double> d;
    d.reserve(dbl.dim());
    for (const auto& l : dbl.labels()) {
        const double two_n = static_cast<double>(l.n.twice);
        d.push_back(l.sector == Sector::Up ? two_n + 1.0 : -two_n);
    }
    return SparseOp::diagonal(dbl, d);
}

} // namespace suq2
