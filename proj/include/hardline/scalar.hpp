#pragma once

#include "hardline/rational.hpp"

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string_view>

namespace hardline {

enum class ArithmeticMode { ExactRational, Float64 };

std::string_view to_string(ArithmeticMode mode);
/// "exact" / "float" (also accepts "rational", "double").
ArithmeticMode parse_arithmetic_mode(std::string_view text);

/// The two numeric modes every quantity in the library can live in.
template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <Scalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

template <Scalar T>
inline constexpr ArithmeticMode mode_of_v = is_exact_v<T> ? ArithmeticMode::ExactRational : ArithmeticMode::Float64;

template <Scalar T>
T ratio(std::int64_t num, std::int64_t den)
{
    if constexpr (is_exact_v<T>)
        return Rational(num, den);
    else
        return static_cast<double>(num) / static_cast<double>(den);
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.to_double(); }

/// Converts between modes; Rational -> double rounds, double -> Rational is exact.
template <Scalar To>
To scalar_cast(const Rational& x)
{
    if constexpr (is_exact_v<To>)
        return x;
    else
        return x.to_double();
}

template <Scalar To>
To scalar_cast(double x)
{
    if constexpr (is_exact_v<To>)
        return Rational::from_double(x);
    else
        return x;
}

inline double abs(double x) { return std::fabs(x); }
inline Rational abs(const Rational& x) { return x.abs(); }

template <Scalar T>
T pow2(unsigned k)
{
    T result = T(1);
    for (unsigned i = 0; i < k; ++i)
        result = result * T(2);
    return result;
}

/// A point strictly inside (lo, hi) chosen to keep numbers small: the simplest
/// rational in the middle half for exact mode, the midpoint for doubles.
template <Scalar T>
T pick_interior(const T& lo, const T& hi)
{
    if constexpr (is_exact_v<T>) {
        Rational quarter = (hi - lo) / Rational(4);
        return simplest_between(lo + quarter, hi - quarter);
    } else {
        return lo + (hi - lo) / 2.0;
    }
}

/// A value strictly inside (lo, hi) close to `target`, which must lie in the interval.
template <Scalar T>
T pick_near(const T& target, const T& lo, const T& hi)
{
    if constexpr (is_exact_v<T>) {
        Rational half_width = (hi - lo) / Rational(16);
        Rational a = target - half_width;
        Rational b = target + half_width;
        if (a <= lo)
            a = lo + (target - lo) / Rational(2);
        if (b >= hi)
            b = hi - (hi - target) / Rational(2);
        if (!(a < b))
            return target;
        return simplest_between(a, b);
    } else {
        (void)lo;
        (void)hi;
        return target;
    }
}

}  // namespace hardline
