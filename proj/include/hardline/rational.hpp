#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace hardline {

/// Arbitrary-precision rational number, always kept in canonical form
/// (reduced, positive denominator).
class Rational {
public:
    Rational() = default;

    template <std::signed_integral I>
    Rational(I value)  // NOLINT(google-explicit-constructor)
        : value_(static_cast<signed long>(value))
    {}

    Rational(std::int64_t num, std::int64_t den);

    explicit Rational(mpq_class value);

    /// Accepts "p/q", "p", and decimal literals such as "-1.25e-3".
    static Rational parse(std::string_view text);

    /// The exact binary value of a finite double.
    static Rational from_double(double value);

    /// Parses the shortest round-trip decimal form of `value`, so 0.1 maps to 1/10.
    static Rational from_decimal_double(double value);

    /// "p/q", with q written even when it is 1.
    std::string str() const;
    double to_double() const;

    const mpq_class& gmp() const noexcept { return value_; }

    int sign() const noexcept { return sgn(value_); }
    bool is_integer() const;
    Rational abs() const;
    /// Largest integer not greater than this value.
    Rational floor() const;
    Rational reciprocal() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& lhs, const Rational& rhs) { return cmp(lhs.value_, rhs.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs)
    {
        return cmp(lhs.value_, rhs.value_) <=> 0;
    }

private:
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

/// Simplest rational (smallest denominator, then smallest magnitude) strictly
/// inside the open interval (lo, hi). Requires lo < hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// base^exponent for exponent >= 0.
Rational pow(const Rational& base, unsigned exponent);

}  // namespace hardline
