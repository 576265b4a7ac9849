#include "suq2/decomp.hpp"

#include "suq2/error.hpp"
#include "suq2/rep_l2.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace suq2 {

namespace {

// Ordinal of (sector, n, i, j) in the pair space for every L2 ordinal.
std::vector<std::size_t> pair_ordinals(const TruncatedSpace& l2, const TruncatedSpace& pair, Sector s)
{
    std::vector<std::size_t> out;
    out.reserve(l2.dim());
    for (const auto& l : l2.labels()) out.push_back(pair.ordinal(BasisLabel(s, l.n, l.i, l.j)));
    return out;
}

} // namespace

SparseOp build_U(HalfInt n_max)
{
    const auto l2 = TruncatedSpace::enumerate(SpaceKind::L2, n_max);
    const auto pair = TruncatedSpace::enumerate(SpaceKind::L2Pair, n_max);
    const auto dbl = TruncatedSpace::enumerate(SpaceKind::Double, n_max);
    const auto first = pair_ordinals(l2, pair, Sector::First);
    const auto second = pair_ordinals(l2, pair, Sector::Second);

    std::vector<Triplet> t;
    t.reserve(pair.dim());
    const auto labels = l2.labels();
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const auto& [sec, n, i, j] = labels[k];
        const BasisLabel image1 = j < n ? BasisLabel(Sector::Down, n, i, j + kHalf) : BasisLabel(Sector::Up, n, i, n + kHalf);
        t.push_back({dbl.ordinal(image1), first[k], 1.0});
        t.push_back({dbl.ordinal(BasisLabel(Sector::Up, n, i, j - kHalf)), second[k], 1.0});
    }
    return SparseOp::from_triplets(pair, dbl, std::move(t));
}

SparseOp direct_sum(const SparseOp& a, const SparseOp& b)
{
    if (a.dom().kind() != SpaceKind::L2 || !(a.dom() == a.cod()) || !(a.dom() == b.dom()) || !(b.dom() == b.cod())) {
        throw DimensionError("direct_sum expects two endomorphisms of the same L2 space");
    }
    const auto& l2 = a.dom();
    const auto pair = TruncatedSpace::enumerate(SpaceKind::L2Pair, l2.n_max());
    const auto first = pair_ordinals(l2, pair, Sector::First);
    const auto second = pair_ordinals(l2, pair, Sector::Second);
    std::vector<Triplet> t;
    t.reserve(a.nnz() + b.nnz());
    for (const auto& e : a.triplets()) t.push_back({first[e.row], first[e.col], e.value});
    for (const auto& e : b.triplets()) t.push_back({second[e.row], second[e.col], e.value});
    return SparseOp::from_triplets(pair, pair, std::move(t));
}

IntertwineCheck intertwine_deviation(const SparseOp& u)
{
    const HalfInt n_max = u.dom().n_max();
    const auto l2 = TruncatedSpace::enumerate(SpaceKind::L2, n_max);
    const auto d1 = dirac_family(kD1, l2);
    const auto d2abs = abs_op(dirac_family(kD2, l2));
    const auto lhs = u * direct_sum(d1, d2abs) * adjoint(u);
    const auto d = dirac_D(u.cod());

    IntertwineCheck out;
    out.max_deviation = max_abs_entry(lhs - d);
    const auto ut = adjoint(u);
    out.unitarity_deviation = std::max(max_abs_entry(ut * u - SparseOp::identity(u.dom())),
                                       max_abs_entry(u * ut - SparseOp::identity(u.cod())));
    return out;
}

VerificationReport check_dirac_intertwine(HalfInt n_max, double q_label)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto chk = intertwine_deviation(build_U(n_max));
    VerificationReport r;
    r.suite = "decompose";
    r.key = {q_label, n_max.twice, "U(D1+|D2|)U*=D"};
    r.metrics = {{"max_entry_deviation", chk.max_deviation}, {"unitarity_deviation", chk.unitarity_deviation}};
    r.thresholds = {{"max_entry_deviation", 0.0}, {"unitarity_deviation", 0.0}};
    r.pass = chk.max_deviation == 0.0 && chk.unitarity_deviation == 0.0;
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

SparseOp kq_defect(Generator gen, HalfInt n_max, QParam q)
{
    if (gen != Generator::AlphaStar && gen != Generator::Beta) {
        throw ParameterError("kq_defect is defined for alpha* and beta, got " + std::string(to_string(gen)));
    }
    const auto l2 = TruncatedSpace::enumerate(SpaceKind::L2, n_max);
    const auto dbl = TruncatedSpace::enumerate(SpaceKind::Double, n_max);
    const SparseOp hat = gen == Generator::AlphaStar ? adjoint(alpha_hat(l2, q)) : beta_hat(l2, q);
    const auto u = build_U(n_max);
    return u * direct_sum(hat, hat) * adjoint(u) - pi_prime(gen, dbl, q);
}

DecayFit decay_fit(std::span<const std::pair<HalfInt, double>> norms, double floor)
{
    DecayFit fit;
    for (const auto& [n, v] : norms) {
        if (v > floor) {
            fit.levels.push_back(n);
            fit.norms.push_back(v);
        } else {
            ++fit.censored;
        }
    }
    const std::size_t m = fit.levels.size();
    if (m < 3) {
        throw DiagnosticError("decay_fit needs at least 3 levels above the floor, got " + std::to_string(m) + " (" +
                              std::to_string(fit.censored) + " censored)");
    }
    double sx = 0, sy = 0;
    for (std::size_t k = 0; k < m; ++k) {
        sx += fit.levels[k].value();
        sy += std::log(fit.norms[k]);
    }
    const double mx = sx / static_cast<double>(m), my = sy / static_cast<double>(m);
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const double dx = fit.levels[k].value() - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(fit.norms[k]) - my);
    }
    const double slope = sxy / sxx;
    fit.rate = -slope;
    fit.intercept = my - slope * mx;
    double ss = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const double e = std::log(fit.norms[k]) - (fit.intercept + slope * fit.levels[k].value());
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(m));
    return fit;
}

DecayFit decay_fit(std::span<const std::pair<HalfInt, double>> norms, HalfInt lo, HalfInt hi, double floor)
{
    std::vector<std::pair<HalfInt, double>> window;
    for (const auto& p : norms) {
        if (lo <= p.first && p.first <= hi) window.push_back(p);
    }
    return decay_fit(window, floor);
}

namespace {

double root1m(double e, QParam q) { return std::sqrt(std::max(0.0, 1.0 - q_power(e, q))); }

CoeffMatrix diag2(double s, double up, double down)
{
    CoeffMatrix m;
    m(CoeffMatrix::kUp, CoeffMatrix::kUp) = s * up;
    m(CoeffMatrix::kDown, CoeffMatrix::kDown) = s * down;
    return m;
}

} // namespace

CoeffMatrix leading_form(CoeffKind kind, HalfInt n, HalfInt i, HalfInt j, QParam q, bool simplified)
{
    const double nn = n.value(), ii = i.value(), jj = j.value();
    switch (kind) {
    case CoeffKind::APlus:
        return diag2(root1m(2 * nn + 2 * ii + 2, q), root1m(2 * nn + 2 * jj + 3, q), root1m(2 * nn + 2 * jj + 1, q));
    case CoeffKind::AMinus:
        return diag2(q_power(2 * nn + ii + jj + 0.5, q) * root1m(2 * nn - 2 * ii, q),
                     q.value() * root1m(2 * nn - 2 * jj + 1, q), root1m(2 * nn - 2 * jj - 1, q));
    case CoeffKind::BPlus: {
        const double s = q_power(nn + jj - 0.5, q) * root1m(2 * nn + 2 * ii + 2, q);
        if (simplified) return diag2(s, q.value(), 1.0);
        return diag2(s, q.value() * root1m(2 * nn - 2 * jj + 3, q), root1m(2 * nn - 2 * jj + 1, q));
    }
    case CoeffKind::BMinus: {
        const double s = -q_power(nn + ii, q) * (simplified ? 1.0 : root1m(2 * nn - 2 * ii, q));
        return diag2(s, root1m(2 * nn + 2 * jj + 1, q), root1m(2 * nn + 2 * jj - 1, q));
    }
    }
    return {};
}

std::vector<ResidualPoint> asymptotic_residual(CoeffKind kind, HalfInt lo, HalfInt hi, QParam q, bool simplified)
{
    if (lo.twice < 0 || hi < lo) throw ParameterError("asymptotic_residual: invalid level range");
    const bool plus = kind == CoeffKind::APlus || kind == CoeffKind::BPlus;
    const bool is_a = kind == CoeffKind::APlus || kind == CoeffKind::AMinus;

    std::vector<ResidualPoint> out;
    for (HalfInt n = lo; n <= hi; n += kHalf) {
        const HalfInt m = plus ? n + kHalf : n - kHalf;
        double r = 0.0;
        for (HalfInt i = -n; i <= n; i += kOne) {
            for (HalfInt j = -n - kHalf; j <= n + kHalf; j += kOne) {
                const HalfInt ti = i + kHalf;
                const HalfInt tj = is_a ? j + kHalf : j - kHalf;
                if (!is_valid_label(BasisLabel(Sector::Up, m, ti, tj))) continue;
                const bool row_down = is_valid_label(BasisLabel(Sector::Down, m, ti, tj));
                const bool col_down = is_valid_label(BasisLabel(Sector::Down, n, i, j));
                const auto exact = coeff_matrix(kind, n, i, j, q);
                const auto lead = leading_form(kind, n, i, j, q, simplified);
                for (std::size_t rr = 0; rr < 2; ++rr) {
                    if (rr == CoeffMatrix::kDown && !row_down) continue;
                    for (std::size_t cc = 0; cc < 2; ++cc) {
                        if (cc == CoeffMatrix::kDown && !col_down) continue;
                        r = std::max(r, std::fabs(exact(rr, cc) - lead(rr, cc)));
                    }
                }
            }
        }
        out.push_back({n, r, r / q_power(2.0 * n.value(), q)});
    }
    return out;
}

} // namespace suq2
