#include "doctest.h"

#include "suq2/linop.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <sstream>

using namespace suq2;
using namespace suq2::literals;

namespace {

Eigen::MatrixXd dense(const SparseOp& op)
{
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(op.rows()), static_cast<Eigen::Index>(op.cols()));
    for (const auto& t : op.triplets()) m(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
    return m;
}

double svd_norm(const SparseOp& op)
{
    if (op.nnz() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense(op));
    return svd.singularValues()(0);
}

SparseOp random_op(const TruncatedSpace& dom, const TruncatedSpace& cod, std::mt19937& rng, double density)
{
    std::uniform_real_distribution<double> val(-1.0, 1.0), coin(0.0, 1.0);
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < cod.dim(); ++r) {
        for (std::size_t c = 0; c < dom.dim(); ++c) {
            if (coin(rng) < density) t.push_back({r, c, val(rng)});
        }
    }
    return SparseOp::from_triplets(dom, cod, std::move(t));
}

bool same(const SparseOp& a, const SparseOp& b, double tol = 0.0)
{
    if (!(a.dom() == b.dom()) || !(a.cod() == b.cod())) return false;
    return max_abs_entry(a - b) <= tol;
}

} // namespace

TEST_CASE("apply examples")
{
    const auto s = enumerate(SpaceKind::L2, 1_hh);
    const std::vector<double> v{1.0, -2.0, 0.5, 3.0, 4.0};
    CHECK(suq2::apply(SparseOp::identity(s), v) == v);
    CHECK(suq2::apply(SparseOp(s, s), v) == std::vector<double>(5, 0.0));
    const std::vector<double> lam{2.0, 3.0, 5.0, 7.0, 11.0};
    const auto d = SparseOp::diagonal(s, lam);
    for (std::size_t k = 0; k < 5; ++k) {
        std::vector<double> e(5, 0.0);
        e[k] = 1.0;
        auto out = suq2::apply(d, e);
        CHECK(out[k] == lam[k]);
        out[k] = 0.0;
        CHECK(out == std::vector<double>(5, 0.0));
    }
    CHECK_THROWS_AS(suq2::apply(d, std::vector<double>(4, 1.0)), DimensionError);
}

TEST_CASE("from_triplets sums duplicates, prunes and range-checks")
{
    const auto s = enumerate(SpaceKind::Double, 0_h);
    const auto op = SparseOp::from_triplets(s, s, {{0, 1, 0.5}, {0, 1, 0.25}, {1, 0, 1e-17}, {1, 1, 1.0}, {1, 1, -1.0}});
    CHECK(op.nnz() == 1);
    CHECK(op.coeff(0, 1) == 0.75);
    CHECK_THROWS(SparseOp::from_triplets(s, s, {{2, 0, 1.0}}));
}

TEST_CASE("algebra examples")
{
    const auto s = enumerate(SpaceKind::Double, 0_h);
    const auto shift = SparseOp::from_triplets(s, s, {{1, 0, 1.0}}); // e1 -> e2
    CHECK(same(adjoint(shift), SparseOp::from_triplets(s, s, {{0, 1, 1.0}})));
    CHECK(same(adjoint(adjoint(shift)), shift));
    CHECK(same(SparseOp::identity(s) * shift, shift));
    CHECK(same(shift * SparseOp::identity(s), shift));
    CHECK(same(shift * shift, SparseOp(s, s)));
    CHECK(same(shift + shift, 2.0 * shift));
    CHECK(same(-shift, shift - 2.0 * shift));
    const auto other = enumerate(SpaceKind::L2, 1_hh);
    CHECK_THROWS_AS(compose(SparseOp::identity(other), shift), DimensionError);
}

TEST_CASE("op_norm examples")
{
    const auto s2 = enumerate(SpaceKind::Double, 0_h);
    const auto s5 = enumerate(SpaceKind::L2, 1_hh);
    CHECK(op_norm(SparseOp::identity(s5)) == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> d{1.0, 2.0, 3.0, 0.0, 0.0};
    CHECK(op_norm(SparseOp::diagonal(s5, d)) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(op_norm(SparseOp::from_triplets(s2, s2, {{0, 1, 1.0}})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(op_norm(SparseOp(s5, s5)) == 0.0);
}

TEST_CASE("op_norm when the fixed start vector is orthogonal to the top singular vector")
{
    // [[1, -1]] kills the all-ones vector
    const auto s2 = enumerate(SpaceKind::Double, 0_h);
    const auto op = SparseOp::from_triplets(s2, s2, {{0, 0, 1.0}, {0, 1, -1.0}});
    CHECK(op_norm(op) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("op_norm agrees with a dense SVD")
{
    std::mt19937 rng(20240611);
    const auto a = enumerate(SpaceKind::L2, 3_h);     // 140
    const auto b = enumerate(SpaceKind::Double, 3_h); // 280
    for (int trial = 0; trial < 6; ++trial) {
        const auto t = random_op(a, b, rng, 0.02);
        const auto s = random_op(b, a, rng, 0.02);
        const double nt = op_norm(t), ns = op_norm(s);
        CHECK(nt == doctest::Approx(svd_norm(t)).epsilon(1e-9));
        CHECK(std::fabs(nt - op_norm(adjoint(t))) <= 1e-9 * nt);
        CHECK(op_norm(s * t) <= ns * nt * (1.0 + 1e-9));
    }
}

TEST_CASE("block norms bracket the operator norm")
{
    std::mt19937 rng(7);
    const auto s = enumerate(SpaceKind::L2, 2_h);
    // band operator: level n only to n and n +- 1/2
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < s.dim(); ++r) {
        for (std::size_t c = 0; c < s.dim(); ++c) {
            if (std::abs(s.label(r).n.twice - s.label(c).n.twice) <= 1 && (r * 7 + c) % 5 == 0) t.push_back({r, c, val(rng)});
        }
    }
    const auto op = SparseOp::from_triplets(s, s, t);
    double mx = 0.0, sum = 0.0;
    for (const auto& [n, v] : level_block_norms(op)) {
        mx = std::max(mx, v);
        sum += v;
    }
    const double nrm = op_norm(op);
    CHECK(mx <= nrm * (1.0 + 1e-9));
    CHECK(nrm <= sum * (1.0 + 1e-9));
}

TEST_CASE("block_norm examples")
{
    const auto s = enumerate(SpaceKind::L2, 3_h);
    for (auto n : s.levels()) CHECK(block_norm(SparseOp::identity(s), n) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(block_norm(SparseOp(s, s), 2_h) == 0.0);
    std::vector<double> d;
    for (const auto& l : s.labels()) d.push_back(std::pow(0.5, l.n.value()));
    CHECK(block_norm(SparseOp::diagonal(s, d), 2_h) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("power iteration reports non-convergence")
{
    const auto s5 = enumerate(SpaceKind::L2, 1_hh);
    const std::vector<double> d{1.0, 2.0, 3.0, 2.9, 0.5};
    try {
        (void)op_norm(SparseOp::diagonal(s5, d), NormOptions{1e-10, 3});
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.iterations() == 3);
        CHECK(e.last_iterate().size() == 5);
        CHECK(e.last_estimate() > 0.0);
    }
    CHECK_THROWS_AS(op_norm(SparseOp::identity(s5), NormOptions{0.0, 10}), ParameterError);
}

TEST_CASE("restriction")
{
    const auto s = enumerate(SpaceKind::L2, 1_hh);
    const std::vector<double> d{1.0, 2.0, 3.0, 4.0, 5.0};
    const auto op = SparseOp::diagonal(s, d);
    const std::vector<std::size_t> keep{0, 2};
    const auto r = restrict_domain(op, keep);
    CHECK(r.nnz() == 2);
    CHECK(r.coeff(2, 2) == 3.0);
    CHECK(restrict_codomain(op, keep).coeff(4, 4) == 0.0);
    CHECK(max_abs_entry(op) == 5.0);
}

TEST_CASE("triplet dump round trip")
{
    std::mt19937 rng(3);
    const auto a = enumerate(SpaceKind::L2, 1_h);
    const auto b = enumerate(SpaceKind::Double, 1_hh);
    const auto op = random_op(a, b, rng, 0.3);
    std::stringstream io;
    write_triplets(io, op);
    CHECK(io.str().rfind("# suq2 sparse operator\n# dom L2 twice_nmax=2 dim=14\n# cod Double twice_nmax=1 dim=10\n", 0) == 0);
    const auto back = read_triplets(io);
    CHECK(same(back, op));
    std::istringstream bad("not a dump\n");
    CHECK_THROWS_AS(read_triplets(bad), ParameterError);
}
