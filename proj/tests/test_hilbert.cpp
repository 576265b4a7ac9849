#include "doctest.h"

#include "suq2/error.hpp"
#include "suq2/hilbert.hpp"

#include <sstream>

using namespace suq2;
using namespace suq2::literals;

namespace {

// counts admissible labels straight from the index ranges
std::size_t brute_double_dim(int twice_nmax)
{
    std::size_t count = 0;
    for (int tn = 0; tn <= twice_nmax; ++tn) {
        for (int ti = -tn; ti <= tn; ti += 2) {
            for (int tj = -tn - 1; tj <= tn + 1; tj += 2) ++count; // up
            for (int tj = -tn + 1; tj <= tn - 1; tj += 2) ++count; // down
        }
    }
    return count;
}

} // namespace

TEST_CASE("dimensions")
{
    CHECK(enumerate(SpaceKind::L2, 0_h).dim() == 1);
    CHECK(enumerate(SpaceKind::L2, 1_h).dim() == 14);
    CHECK(l2_dimension(1_h) == 14);
    CHECK(enumerate(SpaceKind::Double, 1_hh).dim() == brute_double_dim(1));
    CHECK(enumerate(SpaceKind::Double, 1_hh).dim() == 10);
    for (int t = 0; t <= 24; ++t) {
        const auto n = HalfInt::from_twice(t);
        CHECK(enumerate(SpaceKind::Double, n).dim() == brute_double_dim(t));
        CHECK(enumerate(SpaceKind::Double, n).dim() == 2 * l2_dimension(n));
        CHECK(enumerate(SpaceKind::L2Pair, n).dim() == 2 * l2_dimension(n));
        CHECK((t + 1) * (t + 2) + (t + 1) * t == 2 * (t + 1) * (t + 1));
    }
}

TEST_CASE("label validity")
{
    CHECK(is_valid_label({Sector::Plain, 1_hh, 1_hh, -1_hh}));
    CHECK(!is_valid_label({Sector::Plain, 1_hh, 3_hh, 1_hh}));
    CHECK(!is_valid_label({Sector::Plain, 1_h, 1_hh, 0_h}));
    CHECK(is_valid_label({Sector::Up, 0_h, 0_h, 1_hh}));
    CHECK(!is_valid_label({Sector::Down, 0_h, 0_h, 0_h}));
    CHECK(!is_valid_label({Sector::Down, 1_h, 0_h, 3_hh}));
    CHECK(is_valid_label({Sector::Down, 1_h, 0_h, 1_hh}));
}

TEST_CASE("lookup and enumerate are inverse")
{
    for (auto kind : {SpaceKind::L2, SpaceKind::Double, SpaceKind::L2Pair}) {
        const auto s = enumerate(kind, 3_h);
        for (std::size_t k = 0; k < s.dim(); ++k) {
            CHECK(s.ordinal(s.label(k)) == k);
            CHECK(is_valid_label(s.label(k)));
        }
        CHECK_FALSE(s.find({Sector::Plain, 4_h, 0_h, 0_h}).has_value());
    }
    const auto l2 = enumerate(SpaceKind::L2, 1_h);
    CHECK_THROWS_AS(l2.ordinal({Sector::Plain, 2_h, 0_h, 0_h}), ParameterError);
    CHECK_THROWS_AS(l2.ordinal({Sector::Up, 0_h, 0_h, 1_hh}), ParameterError);
}

TEST_CASE("canonical order: n, then sector, then i, then j")
{
    const auto s = enumerate(SpaceKind::Double, 2_h);
    for (std::size_t k = 1; k < s.dim(); ++k) {
        const auto& a = s.label(k - 1);
        const auto& b = s.label(k);
        const auto key = [](const BasisLabel& l) {
            return std::tuple(l.n, static_cast<int>(l.sector), l.i, l.j);
        };
        CHECK(key(a) < key(b));
    }
    const auto [lo, hi] = s.level_range(1_hh);
    CHECK(lo == 2);
    CHECK(hi == 10);
    CHECK(s.label(0) == BasisLabel(Sector::Up, 0_h, 0_h, -1_hh));
    CHECK_THROWS(s.level_range(3_h));
    CHECK(s.levels().size() == 5);
}

TEST_CASE("interior")
{
    const auto s = enumerate(SpaceKind::L2, 1_h);
    CHECK(interior(s, 0_h).size() == s.dim());
    CHECK(interior(s, kHalf).size() == 5);
    CHECK(interior(s, kOne).size() == 1);
    CHECK(interior(s, 2_h).empty());
}

TEST_CASE("space identity")
{
    CHECK(enumerate(SpaceKind::L2, 1_h) == enumerate(SpaceKind::L2, 1_h));
    CHECK_FALSE(enumerate(SpaceKind::L2, 1_h) == enumerate(SpaceKind::L2, 2_h));
    CHECK_FALSE(enumerate(SpaceKind::L2Pair, 1_h) == enumerate(SpaceKind::Double, 1_h));
}

TEST_CASE("basis CSV")
{
    std::ostringstream out;
    write_basis_csv(out, enumerate(SpaceKind::Double, 0_h));
    CHECK(out.str().rfind("kind,2n,2i,2j,band,ordinal\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : out.str()) lines += c == '\n';
    CHECK(lines == 3);
}
