#include "suq2/hilbert.hpp"

#include "suq2/error.hpp"

#include <cstdlib>
#include <ostream>
#include <unordered_map>

namespace suq2 {

std::string_view to_string(SpaceKind k)
{
    switch (k) {
    case SpaceKind::L2: return "L2";
    case SpaceKind::Double: return "Double";
    case SpaceKind::L2Pair: return "L2Pair";
    }
    return "?";
}

std::string_view to_string(Sector s)
{
    switch (s) {
    case Sector::Plain: return "-";
    case Sector::Up: return "up";
    case Sector::Down: return "down";
    case Sector::First: return "first";
    case Sector::Second: return "second";
    }
    return "?";
}

namespace {

bool in_range(HalfInt x, HalfInt lo, HalfInt hi)
{
    // lo..hi in integer steps
    return lo <= x && x <= hi && (x.twice - lo.twice) % 2 == 0;
}

std::uint64_t pack(const BasisLabel& l)
{
    constexpr std::uint64_t kOff = 1u << 15;
    auto u = [](std::int32_t v) { return static_cast<std::uint64_t>(v + static_cast<std::int32_t>(kOff)); };
    return (static_cast<std::uint64_t>(l.sector) << 48) | (u(l.n.twice) << 32) | (u(l.i.twice) << 16) | u(l.j.twice);
}

} // namespace

bool is_valid_label(const BasisLabel& l)
{
    if (l.n.twice < 0) return false;
    if (!in_range(l.i, -l.n, l.n)) return false;
    switch (l.sector) {
    case Sector::Up: return in_range(l.j, -l.n - kHalf, l.n + kHalf);
    case Sector::Down: return in_range(l.j, -l.n + kHalf, l.n - kHalf);
    case Sector::Plain:
    case Sector::First:
    case Sector::Second: return in_range(l.j, -l.n, l.n);
    }
    return false;
}

struct TruncatedSpace::Impl {
    SpaceKind kind;
    HalfInt n_max;
    std::vector<BasisLabel> basis;
    std::vector<std::size_t> level_start; // size 2*n_max + 2
    std::unordered_map<std::uint64_t, std::size_t> lookup;
};

TruncatedSpace::TruncatedSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

TruncatedSpace TruncatedSpace::enumerate(SpaceKind kind, HalfInt n_max)
{
    if (n_max.twice < 0) throw ParameterError("n_max must be nonnegative, got " + n_max.str());

    auto impl = std::make_shared<Impl>();
    impl->kind = kind;
    impl->n_max = n_max;

    auto push_sector = [&](Sector s, HalfInt n, HalfInt j_lo, HalfInt j_hi) {
        for (HalfInt i = -n; i <= n; i += kOne) {
            for (HalfInt j = j_lo; j <= j_hi; j += kOne) {
                impl->basis.emplace_back(s, n, i, j);
            }
        }
    };

    for (HalfInt n{0}; n <= n_max; n += kHalf) {
        impl->level_start.push_back(impl->basis.size());
        switch (kind) {
        case SpaceKind::L2: push_sector(Sector::Plain, n, -n, n); break;
        case SpaceKind::Double:
            push_sector(Sector::Up, n, -n - kHalf, n + kHalf);
            push_sector(Sector::Down, n, -n + kHalf, n - kHalf);
            break;
        case SpaceKind::L2Pair:
            push_sector(Sector::First, n, -n, n);
            push_sector(Sector::Second, n, -n, n);
            break;
        }
    }
    impl->level_start.push_back(impl->basis.size());

    impl->lookup.reserve(impl->basis.size());
    for (std::size_t k = 0; k < impl->basis.size(); ++k) impl->lookup.emplace(pack(impl->basis[k]), k);

    return TruncatedSpace(std::move(impl));
}

SpaceKind TruncatedSpace::kind() const noexcept { return impl_->kind; }
HalfInt TruncatedSpace::n_max() const noexcept { return impl_->n_max; }
std::size_t TruncatedSpace::dim() const noexcept { return impl_->basis.size(); }

const BasisLabel& TruncatedSpace::label(std::size_t ordinal) const { return impl_->basis.at(ordinal); }
std::span<const BasisLabel> TruncatedSpace::labels() const noexcept { return impl_->basis; }

std::optional<std::size_t> TruncatedSpace::find(const BasisLabel& label) const
{
    if (label.n.twice < 0 || label.n > impl_->n_max) return std::nullopt;
    auto it = impl_->lookup.find(pack(label));
    if (it == impl_->lookup.end()) return std::nullopt;
    return it->second;
}

std::size_t TruncatedSpace::ordinal(const BasisLabel& label) const
{
    if (auto k = find(label)) return *k;
    throw ParameterError("label (" + std::string(to_string(label.sector)) + ", n=" + label.n.str() + ", i=" +
                         label.i.str() + ", j=" + label.j.str() + ") is not in the " +
                         std::string(to_string(kind())) + " space with n_max=" + n_max().str());
}

std::vector<HalfInt> TruncatedSpace::levels() const
{
    std::vector<HalfInt> out;
    for (HalfInt n{0}; n <= impl_->n_max; n += kHalf) out.push_back(n);
    return out;
}

std::pair<std::size_t, std::size_t> TruncatedSpace::level_range(HalfInt n) const
{
    if (n.twice < 0 || n > impl_->n_max) {
        throw ParameterError("level " + n.str() + " is absent (n_max=" + impl_->n_max.str() + ")");
    }
    const auto k = static_cast<std::size_t>(n.twice);
    return {impl_->level_start[k], impl_->level_start[k + 1]};
}

bool TruncatedSpace::operator==(const TruncatedSpace& other) const noexcept
{
    return impl_ == other.impl_ || (impl_->kind == other.impl_->kind && impl_->n_max == other.impl_->n_max);
}

std::size_t l2_dimension(HalfInt n_max)
{
    std::size_t d = 0;
    for (std::int32_t t = 0; t <= n_max.twice; ++t) d += static_cast<std::size_t>((t + 1) * (t + 1));
    return d;
}

std::vector<std::size_t> interior(const TruncatedSpace& space, HalfInt margin)
{
    if (margin.twice < 0) throw ParameterError("interior margin must be nonnegative");
    std::vector<std::size_t> out;
    const HalfInt top = space.n_max() - margin;
    if (top.twice < 0) return out;
    const auto end = space.level_range(top).second;
    out.reserve(end);
    for (std::size_t k = 0; k < end; ++k) out.push_back(k);
    return out;
}

void write_basis_csv(std::ostream& out, const TruncatedSpace& space)
{
    out << "kind,2n,2i,2j,band,ordinal\n";
    const auto labels = space.labels();
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const auto& l = labels[k];
        out << to_string(space.kind()) << ',' << l.n.twice << ',' << l.i.twice << ',' << l.j.twice << ','
            << to_string(l.sector) << ',' << k << '\n';
    }
}

} // namespace suq2
