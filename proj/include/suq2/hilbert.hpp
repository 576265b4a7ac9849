#pragma once

#include "suq2/qnum.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace suq2 {

/// L2: Peter-Weyl space L2(h) with basis e^{(n)}_{ij}.
/// Double: spinor space H = W_0^up + sum_n (W_n^up + W_n^down).
/// L2Pair: L2(h) + L2(h), the domain of the intertwining unitary.
enum class SpaceKind : std::uint8_t { L2, Double, L2Pair };

/// Component tag of a basis vector. Plain for L2; Up/Down for Double;
/// First/Second for the two summands of L2Pair.
enum class Sector : std::uint8_t { Plain, Up, Down, First, Second };

enum class Band : std::uint8_t { Up, Down };

struct L2Index {
    HalfInt n, i, j;
};

struct DoubleIndex {
    Band band;
    HalfInt n, i, j;
};

struct BasisLabel {
    Sector sector = Sector::Plain;
    HalfInt n, i, j;

    BasisLabel() = default;
    BasisLabel(Sector s, HalfInt n_, HalfInt i_, HalfInt j_) : sector(s), n(n_), i(i_), j(j_) {}
    BasisLabel(const L2Index& x) : sector(Sector::Plain), n(x.n), i(x.i), j(x.j) {}
    BasisLabel(const DoubleIndex& x)
        : sector(x.band == Band::Up ? Sector::Up : Sector::Down), n(x.n), i(x.i), j(x.j) {}

    bool operator==(const BasisLabel&) const = default;
};

std::string_view to_string(SpaceKind k);
std::string_view to_string(Sector s);

/// True if (n, i, j) is an admissible label for the given sector, ignoring truncation.
bool is_valid_label(const BasisLabel& label);

/// Ordered orthonormal basis of a truncated space, immutable once built.
///
/// Order: by n, then sector (Up before Down, First before Second), then i,
/// then j. Each level therefore occupies a contiguous ordinal range.
class TruncatedSpace {
public:
    static TruncatedSpace enumerate(SpaceKind kind, HalfInt n_max);

    SpaceKind kind() const noexcept;
    HalfInt n_max() const noexcept;
    std::size_t dim() const noexcept;

    const BasisLabel& label(std::size_t ordinal) const;
    std::span<const BasisLabel> labels() const noexcept;

    std::optional<std::size_t> find(const BasisLabel& label) const;
    std::size_t ordinal(const BasisLabel& label) const; // throws ParameterError if absent

    /// Levels 0, 1/2, ..., n_max.
    std::vector<HalfInt> levels() const;
    /// Half-open ordinal range of level n.
    std::pair<std::size_t, std::size_t> level_range(HalfInt n) const;

    bool operator==(const TruncatedSpace& other) const noexcept;

private:
    struct Impl;
    explicit TruncatedSpace(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

inline TruncatedSpace enumerate(SpaceKind kind, HalfInt n_max) { return TruncatedSpace::enumerate(kind, n_max); }

/// sum over 2n = 0..2 n_max of (2n+1)^2.
std::size_t l2_dimension(HalfInt n_max);

/// Ordinals of basis vectors with n <= n_max - margin (empty if margin > n_max).
std::vector<std::size_t> interior(const TruncatedSpace& space, HalfInt margin);

/// CSV with header kind,2n,2i,2j,band,ordinal.
void write_basis_csv(std::ostream& out, const TruncatedSpace& space);

} // namespace suq2
