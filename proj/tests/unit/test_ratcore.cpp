#include <gtest/gtest.h>

#include <random>

#include "anisocalc/errors.hpp"
#include "anisocalc/ratcore.hpp"

using namespace anisocalc;

TEST(Rational, NormalizesAndPrints) {
  EXPECT_EQ(Rational(6, 8).str(), "3/4");
  EXPECT_EQ(Rational(4, -2).str(), "-2");
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-3"), Rational(-3));
  EXPECT_EQ(Rational(-7, 2).floor(), Rational(-4));
  EXPECT_THROW(Rational(1, 0), EngineError);
  EXPECT_THROW(Rational::parse("x/2"), EngineError);
}

TEST(Rational, FieldArithmeticIsExact) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-50, 50), pos(1, 50);
  for (int i = 0; i < 2000; ++i) {
    Rational a(d(rng), pos(rng)), b(d(rng), pos(rng)), c(d(rng), pos(rng));
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a - a, Rational(0));
    if (b.sign() != 0) EXPECT_EQ(a / b * b, a);
    EXPECT_EQ(a < b, a.to_double() < b.to_double() || (a != b && a.to_double() == b.to_double() && a < b));
  }
}

TEST(Rational, LcmOfWeights) {
  EXPECT_EQ(lcm_of({2, 1}), 2);
  EXPECT_EQ(lcm_of({4, 6}), 12);
  EXPECT_EQ(lcm_of({3}), 3);
}

TEST(AffineExpr, RenderingInXAndP) {
  AffineExpr ind{Rational(1), Rational(-5, 2)};
  EXPECT_EQ(ind.p_str(), "1 - 5/(2p)");
  EXPECT_EQ(AffineExpr(Rational(0), Rational(-3)).p_str(), "-3/p");
  EXPECT_EQ(ind.at(Rational(1, 5)), Rational(1, 2));
  EXPECT_EQ(*ind.root(), Rational(2, 5));
  EXPECT_FALSE(AffineExpr(Rational(2)).root().has_value());
}

TEST(SignPartition, MatchesPointwiseComparison) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> d(-6, 6), pos(1, 6);
  for (int i = 0; i < 500; ++i) {
    AffineExpr lhs{Rational(d(rng), pos(rng)), Rational(d(rng), pos(rng))};
    AffineExpr rhs{Rational(d(rng), pos(rng)), Rational(d(rng), pos(rng))};
    bool strict = i % 2 == 0;
    SignPartition part = affine_compare(lhs, rhs, strict);
    for (long k = 1; k < 24; ++k) {
      Rational x(k, 24);
      Rational l = lhs.at(x), r = rhs.at(x);
      EXPECT_EQ(part.holds_at(x), strict ? l < r : l <= r);
    }
  }
}
