#include "suq2/qnum.hpp"

#include "suq2/error.hpp"

#include <cmath>
#include <string>

namespace suq2 {

QParam::QParam(double q) : q_(q)
{
    if (!(q > 0.0 && q < 1.0)) {
        throw ParameterError("q must lie in the open interval (0,1), got " + std::to_string(q));
    }
}

double QParam::log_inverse() const noexcept { return -std::log(q_); }

std::string HalfInt::str() const
{
    if (is_integer()) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

namespace {

// [m] for m >= 0 written as q^{1-m} (1 - q^{2m}) / (1 - q^2), which avoids the
// cancellation of q^m - q^{-m} for small m.
double q_number_nonneg(double m, double q)
{
    const double lq = std::log(q);
    const double num = -std::expm1(2.0 * m * lq);
    const double den = -std::expm1(2.0 * lq);
    if (m == 1.0) return 1.0;
    return std::exp((1.0 - m) * lq) * num / den;
}

} // namespace

double q_number(double m, QParam q)
{
    if (m == 0.0) return 0.0;
    const double mag = q_number_nonneg(std::fabs(m), q.value());
    return m < 0.0 ? -mag : mag;
}

double q_number(HalfInt m, QParam q) { return q_number(m.value(), q); }

double q_power(double e, QParam q) { return std::pow(q.value(), e); }

double q_number_root(HalfInt m, QParam q)
{
    if (m.twice <= 0) return 0.0;
    return std::sqrt(q_number(m, q));
}

} // namespace suq2
