#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace suq2 {

/// Deformation parameter, always strictly inside (0, 1).
class QParam {
public:
    explicit QParam(double q);

    double value() const noexcept { return q_; }
    double log_inverse() const noexcept; // ln(1/q)

private:
    double q_;
};

/// Half-integer stored as its doubled value so index arithmetic stays exact.
struct HalfInt {
    std::int32_t twice = 0;

    static constexpr HalfInt from_twice(std::int32_t t) noexcept { return HalfInt{t}; }
    static constexpr HalfInt from_int(std::int32_t v) noexcept { return HalfInt{2 * v}; }

    constexpr double value() const noexcept { return 0.5 * static_cast<double>(twice); }
    constexpr bool is_integer() const noexcept { return twice % 2 == 0; }

    constexpr HalfInt operator-() const noexcept { return HalfInt{-twice}; }
    constexpr HalfInt operator+(HalfInt o) const noexcept { return HalfInt{twice + o.twice}; }
    constexpr HalfInt operator-(HalfInt o) const noexcept { return HalfInt{twice - o.twice}; }
    constexpr HalfInt& operator+=(HalfInt o) noexcept { twice += o.twice; return *this; }
    constexpr HalfInt& operator-=(HalfInt o) noexcept { twice -= o.twice; return *this; }

    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string str() const; // "3/2", "-1", "0"
};

namespace literals {
constexpr HalfInt operator""_h(unsigned long long v) { return HalfInt::from_int(static_cast<std::int32_t>(v)); }
/// 3_hh == 3/2
constexpr HalfInt operator""_hh(unsigned long long t) { return HalfInt::from_twice(static_cast<std::int32_t>(t)); }
} // namespace literals

inline constexpr HalfInt kHalf = HalfInt::from_twice(1);
inline constexpr HalfInt kOne = HalfInt::from_twice(2);

/// q-number [m] = (q^m - q^{-m}) / (q - q^{-1}).
/// Odd in m bit-for-bit; [0] = 0 and [1] = 1 exactly.
double q_number(HalfInt m, QParam q);

/// Same as q_number for a real argument; used by limit checks.
double q_number(double m, QParam q);

/// q^e.
double q_power(double e, QParam q);

/// [m]^{1/2}, with the value 0 for m <= 0. Coefficient displays only take
/// the root of nonpositive q-numbers on entries whose d-vector is absent.
double q_number_root(HalfInt m, QParam q);

} // namespace suq2

template <>
struct std::hash<suq2::HalfInt> {
    std::size_t operator()(suq2::HalfInt h) const noexcept { return std::hash<std::int32_t>{}(h.twice); }
};
