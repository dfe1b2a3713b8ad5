#include "hardline/rational.hpp"

#include "hardline/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>
#include <system_error>

namespace hardline {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Construction: return "ConstructionError";
    case ErrorKind::Inconsistency: return "InconsistencyError";
    case ErrorKind::Oracle: return "OracleError";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Internal: return "InternalError";
    }
    return "Error";
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

[[noreturn]] void bad_literal(std::string_view text)
{
    throw Error(ErrorKind::Domain, "not a rational literal: '" + std::string(text) + "'");
}

mpz_class pow10(unsigned long exponent)
{
    mpz_class result;
    mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
    return result;
}

Rational parse_decimal(std::string_view text)
{
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = rest.substr(e + 1);
        rest = rest.substr(0, e);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 6)
            bad_literal(text);
        exponent = std::stol(std::string(exp_text));
        if (exp_negative)
            exponent = -exponent;
    }

    std::string digits;
    if (auto dot = rest.find('.'); dot != std::string_view::npos) {
        std::string_view whole = rest.substr(0, dot);
        std::string_view frac = rest.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            bad_literal(text);
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        if (!all_digits(rest))
            bad_literal(text);
        digits = std::string(rest);
    }

    mpq_class value{mpz_class(digits, 10)};
    if (exponent > 0)
        value *= pow10(static_cast<unsigned long>(exponent));
    else if (exponent < 0)
        value /= pow10(static_cast<unsigned long>(-exponent));
    value.canonicalize();
    if (negative)
        value = -value;
    return Rational(value);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw Error(ErrorKind::Domain, "rational with zero denominator");
    value_ = mpq_class(mpz_class(static_cast<signed long>(num)), mpz_class(static_cast<signed long>(den)));
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value))
{
    if (value_.get_den() == 0)
        throw Error(ErrorKind::Domain, "rational with zero denominator");
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.empty())
        bad_literal(text);

    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return parse_decimal(text);

    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
        num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den))
        bad_literal(text);

    mpz_class n(std::string(num_digits), 10);
    if (num.front() == '-')
        n = -n;
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw Error(ErrorKind::Domain, "rational with zero denominator: '" + std::string(text) + "'");
    return Rational(mpq_class(n, d));
}

Rational Rational::from_double(double value)
{
    if (!std::isfinite(value))
        throw Error(ErrorKind::Domain, "cannot convert a non-finite double to a rational");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), value);
    return Rational(q);
}

Rational Rational::from_decimal_double(double value)
{
    if (!std::isfinite(value))
        throw Error(ErrorKind::Domain, "cannot convert a non-finite double to a rational");
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{})
        throw Error(ErrorKind::Internal, "double formatting failed");
    return parse_decimal(std::string_view(buf, static_cast<std::size_t>(end - buf)));
}

std::string Rational::str() const
{
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

double Rational::to_double() const
{
    return value_.get_d();
}

bool Rational::is_integer() const
{
    return value_.get_den() == 1;
}

Rational Rational::abs() const
{
    return Rational(mpq_class(::abs(value_)));
}

Rational Rational::floor() const
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return Rational(mpq_class(q));
}

Rational Rational::reciprocal() const
{
    if (sign() == 0)
        throw Error(ErrorKind::Domain, "reciprocal of zero");
    return Rational(mpq_class(1) / value_);
}

Rational& Rational::operator+=(const Rational& rhs)
{
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs)
{
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs)
{
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.sign() == 0)
        throw Error(ErrorKind::Domain, "division by zero");
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::operator-() const
{
    return Rational(mpq_class(-value_));
}

std::ostream& operator<<(std::ostream& os, const Rational& value)
{
    return os << value.str();
}

Rational simplest_between(const Rational& lo, const Rational& hi)
{
    if (!(lo < hi))
        throw Error(ErrorKind::Domain, "simplest_between needs lo < hi");
    if (lo.sign() < 0 && hi.sign() > 0)
        return Rational(0);
    if (hi.sign() <= 0)
        return -simplest_between(-hi, -lo);

    // 0 <= lo < hi: continued-fraction descent.
    Rational whole = lo.floor();
    Rational next = whole + Rational(1);
    if (next < hi)
        return next;
    if (lo == whole) {
        Rational y = (hi - whole).reciprocal().floor() + Rational(1);
        return whole + y.reciprocal();
    }
    return whole + simplest_between((hi - whole).reciprocal(), (lo - whole).reciprocal()).reciprocal();
}

Rational pow(const Rational& base, unsigned exponent)
{
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.gmp().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.gmp().get_den_mpz_t(), exponent);
    return Rational(mpq_class(num, den));
}

}  // namespace hardline
