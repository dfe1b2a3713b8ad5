#include "hardline/rational.hpp"
#include "hardline/error.hpp"

#include <gtest/gtest.h>

using hardline::Error;
using hardline::ErrorKind;
using hardline::Rational;

TEST(Rational, CanonicalForm)
{
    EXPECT_EQ(Rational(2, 4).str(), "1/2");
    EXPECT_EQ(Rational(3, -6).str(), "-1/2");
    EXPECT_EQ(Rational(0, -5).str(), "0/1");
    EXPECT_EQ(Rational(7).str(), "7/1");
    EXPECT_EQ(Rational(-4, -8), Rational(1, 2));
}

TEST(Rational, ZeroDenominatorThrows)
{
    EXPECT_THROW(Rational(1, 0), Error);
    EXPECT_THROW(Rational::parse("3/0"), Error);
    EXPECT_THROW(Rational(1) / Rational(0), Error);
}

TEST(Rational, ArithmeticIsExact)
{
    const Rational a(1, 3);
    const Rational b(1, 6);
    EXPECT_EQ(a + b, Rational(1, 2));
    EXPECT_EQ(a - b, Rational(1, 6));
    EXPECT_EQ(a * b, Rational(1, 18));
    EXPECT_EQ(a / b, Rational(2));
    EXPECT_EQ(-a, Rational(-1, 3));
    EXPECT_LT(b, a);
}

TEST(Rational, Parse)
{
    EXPECT_EQ(Rational::parse("22/7"), Rational(22, 7));
    EXPECT_EQ(Rational::parse("-5"), Rational(-5));
    EXPECT_EQ(Rational::parse("0.1"), Rational(1, 10));
    EXPECT_EQ(Rational::parse("-1.25e-3"), Rational(-1, 800));
    EXPECT_EQ(Rational::parse("2.5E2"), Rational(250));
    EXPECT_THROW(Rational::parse("abc"), Error);
    EXPECT_THROW(Rational::parse(""), Error);
    EXPECT_THROW(Rational::parse("1/2/3"), Error);
}

TEST(Rational, FromDouble)
{
    EXPECT_EQ(Rational::from_double(0.5), Rational(1, 2));
    EXPECT_NE(Rational::from_double(0.1), Rational(1, 10));
    EXPECT_EQ(Rational::from_decimal_double(0.1), Rational(1, 10));
    EXPECT_EQ(Rational::from_double(0.1).to_double(), 0.1);
    EXPECT_THROW(Rational::from_double(std::numeric_limits<double>::infinity()), Error);
}

TEST(Rational, FloorAndReciprocal)
{
    EXPECT_EQ(Rational(7, 2).floor(), Rational(3));
    EXPECT_EQ(Rational(-7, 2).floor(), Rational(-4));
    EXPECT_EQ(Rational(-3, 5).reciprocal(), Rational(-5, 3));
    EXPECT_TRUE(Rational(4, 2).is_integer());
    EXPECT_FALSE(Rational(3, 2).is_integer());
}

TEST(Rational, Pow)
{
    EXPECT_EQ(pow(Rational(3, 2), 0), Rational(1));
    EXPECT_EQ(pow(Rational(3, 2), 3), Rational(27, 8));
    EXPECT_EQ(pow(Rational(-1, 2), 5), Rational(-1, 32));
}

TEST(Rational, SimplestBetween)
{
    EXPECT_EQ(simplest_between(Rational(1, 3), Rational(2, 3)), Rational(1, 2));
    EXPECT_EQ(simplest_between(Rational(-1), Rational(1)), Rational(0));
    EXPECT_EQ(simplest_between(Rational(3, 10), Rational(4, 10)), Rational(1, 3));
    EXPECT_EQ(simplest_between(Rational(-4, 10), Rational(-3, 10)), Rational(-1, 3));
    EXPECT_EQ(simplest_between(Rational(2), Rational(3)), Rational(5, 2));
    EXPECT_EQ(simplest_between(Rational(2), Rational(4)), Rational(3));
    EXPECT_THROW(simplest_between(Rational(1), Rational(1)), Error);
}

TEST(Rational, SimplestBetweenIsStrictlyInside)
{
    for (int a = -30; a < 30; ++a) {
        for (int b = 1; b < 20; ++b) {
            const Rational lo(a, 7);
            const Rational hi = lo + Rational(1, b * b);
            const Rational x = simplest_between(lo, hi);
            EXPECT_LT(lo, x);
            EXPECT_LT(x, hi);
        }
    }
}

TEST(Rational, ErrorKindNames)
{
    EXPECT_EQ(hardline::to_string(ErrorKind::Schema), "SchemaError");
    EXPECT_EQ(hardline::to_string(ErrorKind::Domain), "DomainError");
}
