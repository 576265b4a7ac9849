#include "doctest.h"

#include "suq2/decomp.hpp"
#include "suq2/error.hpp"
#include "suq2/rep_l2.hpp"

#include <cmath>

using namespace suq2;
using namespace suq2::literals;

namespace {

std::vector<std::pair<HalfInt, double>> synthetic(int twice_top, double (*f)(double n, double q), double q)
{
    std::vector<std::pair<HalfInt, double>> out;
    for (int t = 0; t <= twice_top; ++t) out.emplace_back(HalfInt::from_twice(t), f(0.5 * t, q));
    return out;
}

} // namespace

TEST_CASE("U on the lowest vectors")
{
    const auto u = build_U(1_h);
    const auto& pair = u.dom();
    const auto& dbl = u.cod();
    CHECK(pair.kind() == SpaceKind::L2Pair);
    CHECK(dbl.kind() == SpaceKind::Double);
    const auto first = pair.ordinal({Sector::First, 0_h, 0_h, 0_h});
    const auto second = pair.ordinal({Sector::Second, 0_h, 0_h, 0_h});
    CHECK(u.coeff(dbl.ordinal({Sector::Up, 0_h, 0_h, 1_hh}), first) == 1.0);
    CHECK(u.coeff(dbl.ordinal({Sector::Up, 0_h, 0_h, -1_hh}), second) == 1.0);
    CHECK(u.coeff(dbl.ordinal({Sector::Down, 1_h, 0_h, 1_hh}), pair.ordinal({Sector::First, 1_h, 0_h, 0_h})) == 1.0);
}

TEST_CASE("U is a permutation and intertwines the Dirac operators exactly")
{
    for (int t : {0, 1, 4, 8, 16}) {
        const auto n = HalfInt::from_twice(t);
        const auto u = build_U(n);
        CHECK(u.nnz() == u.rows());
        for (const auto& e : u.triplets()) CHECK(e.value == 1.0);
        const auto chk = intertwine_deviation(u);
        CHECK(chk.max_deviation == 0.0);
        CHECK(chk.unitarity_deviation == 0.0);
        const auto r = check_dirac_intertwine(n, 0.5);
        CHECK(r.pass);
        CHECK(r.metric("max_entry_deviation") == 0.0);
    }
}

TEST_CASE("a perturbed U is flagged")
{
    const auto u = build_U(2_h);
    auto t = u.triplets();
    t[3].value = 0.999;
    CHECK(intertwine_deviation(SparseOp::from_triplets(u.dom(), u.cod(), t)).unitarity_deviation > 0.0);
    // swap two targets that carry different D eigenvalues
    auto s = u.triplets();
    std::swap(s.front().row, s.back().row);
    CHECK(intertwine_deviation(SparseOp::from_triplets(u.dom(), u.cod(), s)).max_deviation > 0.0);
}

TEST_CASE("direct sum")
{
    const auto l2 = enumerate(SpaceKind::L2, 1_h);
    const auto sum = direct_sum(dirac_family(kD1, l2), abs_op(dirac_family(kD2, l2)));
    CHECK(sum.dom().kind() == SpaceKind::L2Pair);
    CHECK(sum.is_diagonal());
    const auto k = sum.dom().ordinal({Sector::Second, 1_h, 0_h, 0_h});
    CHECK(sum.coeff(k, k) == 3.0);
    const auto k1 = sum.dom().ordinal({Sector::First, 1_h, 0_h, 0_h});
    CHECK(sum.coeff(k1, k1) == -2.0);
}

TEST_CASE("K_q defect")
{
    const QParam q(0.5);
    const auto d = kq_defect(Generator::AlphaStar, 6_h, q);
    const auto norms = level_block_norms(d);
    CHECK(norms.front().second <= 1.0);
    for (std::size_t k = 4; k + 1 < norms.size(); ++k) CHECK(norms[k + 1].second < norms[k].second);
    for (const auto& t : d.triplets()) CHECK(std::abs(d.cod().label(t.row).n.twice - d.dom().label(t.col).n.twice) == 1);
    const auto db = kq_defect(Generator::Beta, 6_h, q);
    const auto bn = level_block_norms(db);
    for (std::size_t k = 4; k + 1 < bn.size(); ++k) CHECK(bn[k + 1].second < bn[k].second);
    CHECK_THROWS_AS(kq_defect(Generator::Alpha, 2_h, q), ParameterError);
}

TEST_CASE("decay fit examples")
{
    for (double qv : {0.3, 0.5, 0.7}) {
        const QParam q(qv);
        const auto exact = synthetic(16, [](double n, double q) { return std::pow(q, 2 * n); }, qv);
        CHECK(std::fabs(decay_fit(exact).rate - 2 * std::log(1 / qv)) <= 1e-9);
        CHECK(decay_fit(exact).rate_in_units(q) == doctest::Approx(2.0).epsilon(1e-9));
        const auto flat = synthetic(16, [](double, double) { return 0.3; }, qv);
        CHECK(std::fabs(decay_fit(flat).rate) <= 1e-12);
        const auto wobble = synthetic(
            16, [](double n, double q) { return std::pow(q, 2 * n) * (1 + std::pow(-1.0, 2 * n) / 10); }, qv);
        CHECK(std::fabs(decay_fit(wobble).rate_in_units(q) - 2.0) <= 0.1);
    }
}

TEST_CASE("decay fit window and floor")
{
    const auto data = synthetic(16, [](double n, double q) { return std::pow(q, 2 * n); }, 0.05);
    const auto fit = decay_fit(data, 2_h, 7_h);
    CHECK(fit.levels.front() == 2_h);
    CHECK(fit.censored == 4); // 0.0025^n < 1e-14 for n = 11/2, 6, 13/2, 7
    for (double v : fit.norms) CHECK(v > kNormFloor);
    std::vector<std::pair<HalfInt, double>> two{{0_h, 1.0}, {1_h, 0.5}};
    CHECK_THROWS_AS(decay_fit(two), DiagnosticError);
    std::vector<std::pair<HalfInt, double>> zeros{{0_h, 0.0}, {1_h, 0.0}, {2_h, 0.0}, {3_h, 1.0}};
    CHECK_THROWS_AS(decay_fit(zeros), DiagnosticError);
}

TEST_CASE("asymptotic residuals")
{
    for (double qv : {0.3, 0.5, 0.7}) {
        const QParam q(qv);
        CHECK(asymptotic_residual(CoeffKind::AMinus, 0_h, 0_h, q).front().residual == 0.0);
        for (auto kind : {CoeffKind::APlus, CoeffKind::AMinus, CoeffKind::BPlus, CoeffKind::BMinus}) {
            for (bool simplified : {false, true}) {
                const auto pts = asymptotic_residual(kind, 1_h, 6_h, q, simplified);
                CHECK(pts.size() == 11);
                const double c1 = pts.front().scaled;
                CHECK(c1 > 0.0);
                for (const auto& p : pts) CHECK(p.scaled <= 10 * c1);
            }
        }
        // a+ leads with a diagonal block: its (d,u) entry is itself O(q^{2n})
        for (int tn = 2; tn <= 12; ++tn) {
            const auto n = HalfInt::from_twice(tn);
            double worst = 0.0;
            for (HalfInt i = -n; i <= n; i += kOne) {
                for (HalfInt j = -n + kHalf; j <= n - kHalf; j += kOne) {
                    worst = std::max(worst, std::fabs(a_plus(n, i, j, q)(CoeffMatrix::kDown, CoeffMatrix::kUp)));
                }
            }
            CHECK(worst <= 2.0 * std::pow(qv, 2 * n.value()));
        }
    }
    CHECK_THROWS_AS(asymptotic_residual(CoeffKind::APlus, 2_h, 1_h, QParam(0.5)), ParameterError);
}

TEST_CASE("leading forms")
{
    const QParam q(0.5);
    const auto lead = leading_form(CoeffKind::BPlus, 2_h, 0_h, 1_hh, q, true);
    CHECK(lead(0, 1) == 0.0);
    CHECK(lead(1, 1) == doctest::Approx(std::pow(0.5, 2.0) * std::sqrt(1 - std::pow(0.5, 6.0))));
    CHECK(lead(0, 0) == doctest::Approx(0.5 * lead(1, 1)));
}
