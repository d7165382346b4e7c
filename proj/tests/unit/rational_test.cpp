#include <gtest/gtest.h>

#include "necorr/error.hpp"
#include "necorr/rational.hpp"

namespace necorr {
namespace {

TEST(RationalTest, ParsesDecimalsExactly) {
  EXPECT_EQ(Rational::parse("0.8"), Rational(4, 5));
  EXPECT_EQ(Rational::parse(".75"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("1"), Rational(1, 1));
  EXPECT_EQ(Rational::parse("0"), Rational(0, 1));
  EXPECT_EQ(Rational::parse("0.79"), Rational(79, 100));
  EXPECT_EQ(Rational::parse("0.123456789"), Rational(123456789, 1000000000));
}

TEST(RationalTest, ParsesFractions) {
  EXPECT_EQ(Rational::parse("4/5"), Rational(8, 10));
  EXPECT_EQ(Rational::parse("2/3").to_string(), "2/3");
}

TEST(RationalTest, RejectsGarbage) {
  for (const char* bad : {"", ".", "abc", "0.8x", "-1", "1/0", "0.1234567891",
                          "1e-3", "3/"})
    EXPECT_THROW(Rational::parse(bad), ConfigError) << bad;
}

TEST(RationalTest, ComparesByCrossMultiplication) {
  EXPECT_EQ(Rational(8, 10), Rational(4, 5));
  EXPECT_LT(Rational(79, 100), Rational(4, 5));
  EXPECT_GT(Rational(5, 6), Rational(4, 5));
  // 0.8 as a double is 0.8000000000000000444; the rational does not care.
  EXPECT_FALSE(Rational(4, 5) > Rational::parse("0.8"));
}

TEST(RationalTest, ReducesAndPrints) {
  EXPECT_EQ(Rational(6, 8).reduced().to_string(), "3/4");
  EXPECT_EQ(Rational(0, 7).reduced().to_string(), "0/1");
  EXPECT_DOUBLE_EQ(Rational(3, 4).to_double(), 0.75);
  EXPECT_THROW(Rational(1, 0), ConfigError);
}

}  // namespace
}  // namespace necorr
