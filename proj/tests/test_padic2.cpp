#include <gtest/gtest.h>

#include <random>

#include "z2c/padic2.hpp"

using namespace z2c;

namespace {

Rational random_odd_den_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-100000, 100000);
  std::uniform_int_distribution<long> den(0, 5000);
  long n = num(rng);
  if (n == 0) n = 1;
  return make_rational(n, 2 * den(rng) + 1);
}

Rational random_nonzero_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 100000);
  std::uniform_int_distribution<long> sign(0, 1);
  return make_rational(sign(rng) ? num(rng) : -num(rng), num(rng));
}

}  // namespace

TEST(Embed, Examples) {
  EXPECT_EQ(Padic2::embed(Rational(1, 3), 4).residue(), 11);
  EXPECT_TRUE(Padic2::embed(0, 10).is_exact_zero());
  EXPECT_EQ(Padic2::embed(5, 3).residue(), 5);
  EXPECT_THROW(Padic2::embed(Rational(1, 2), 8), DomainError);
}

TEST(Arithmetic, Examples) {
  const Padic2 a = Padic2::from_residue(3, 8), b = Padic2::from_residue(5, 8);
  EXPECT_EQ((a + b).residue(), 8);
  EXPECT_EQ((a + b).precision(), 8);
  const Padic2 c = Padic2::from_residue(3, 16), d = Padic2::from_residue(5, 16);
  EXPECT_EQ((c * d).residue(), 15);
  EXPECT_EQ((c * d).precision(), 16);
  EXPECT_EQ(c.inverse().residue(), 43691);
  EXPECT_THROW(Padic2::from_residue(6, 16).inverse(), DomainError);
}

TEST(Arithmetic, ProductPrecision) {
  // 4 mod 2^10 times 3 mod 2^6: min(10 + 0, 6 + 2, 16) = 8
  const Padic2 p = Padic2::from_residue(4, 10) * Padic2::from_residue(3, 6);
  EXPECT_EQ(p.precision(), 8);
  EXPECT_EQ(p.residue(), 12);
}

TEST(Valuation, Readings) {
  EXPECT_EQ(Padic2::from_residue(12, 10).valuation().kind, Valuation2Result::Kind::exact);
  EXPECT_EQ(Padic2::from_residue(12, 10).valuation().value, 2);
  EXPECT_EQ(Padic2::from_residue(0, 10).valuation().kind, Valuation2Result::Kind::below_precision);
  EXPECT_EQ(Padic2::exact_zero().valuation().kind, Valuation2Result::Kind::exact_zero);
}

TEST(Embed, RingHomomorphism) {
  std::mt19937_64 rng(11);
  const long A = 96;
  for (int t = 0; t < 1000; ++t) {
    const Rational x = random_odd_den_rational(rng), y = random_odd_den_rational(rng);
    const Padic2 ex = Padic2::embed(x, A), ey = Padic2::embed(y, A);
    ASSERT_TRUE((ex * ey).equal_at_precision(Padic2::embed(x * y, A)));
    ASSERT_TRUE((ex + ey).equal_at_precision(Padic2::embed(x + y, A)));
    ASSERT_TRUE((ex - ey).equal_at_precision(Padic2::embed(x - y, A)));
  }
}

TEST(Arithmetic, RingLaws) {
  std::mt19937_64 rng(12);
  const long A = 64;
  for (int t = 0; t < 300; ++t) {
    const Padic2 a = Padic2::embed(random_odd_den_rational(rng), A);
    const Padic2 b = Padic2::embed(random_odd_den_rational(rng), A);
    const Padic2 c = Padic2::embed(random_odd_den_rational(rng), A);
    ASSERT_TRUE(((a + b) + c).equal_at_precision(a + (b + c)));
    ASSERT_TRUE((a * b).equal_at_precision(b * a));
    ASSERT_TRUE(((a * b) * c).equal_at_precision(a * (b * c)));
    ASSERT_TRUE((a * (b + c)).equal_at_precision(a * b + a * c));
  }
}

TEST(Scaled, RoundTripAndValuation) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 500; ++t) {
    const Rational x = random_nonzero_rational(rng);
    const ScaledPadic2 sx = ScaledPadic2::from_rational(x, 80);
    ASSERT_EQ(sx.abs_precision(), 80);
    ASSERT_EQ(sx.valuation().value, vp(2, x));
    const Rational diff = sx.representative() - x;
    ASSERT_TRUE(diff == 0 || vp(2, diff) >= 80);
  }
}

TEST(Scaled, ArithmeticMatchesRationals) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 500; ++t) {
    const Rational x = random_nonzero_rational(rng), y = random_nonzero_rational(rng);
    const ScaledPadic2 sx = ScaledPadic2::from_rational(x, 60), sy = ScaledPadic2::from_rational(y, 60);
    ASSERT_TRUE(agree_mod(sx + sy, ScaledPadic2::from_rational(x + y, 60), 60));
    const ScaledPadic2 prod = sx * sy;
    ASSERT_TRUE(agree_mod(prod, ScaledPadic2::from_rational(x * y, 200), prod.abs_precision()));
    const ScaledPadic2 scaled = sx.scaled(y);
    ASSERT_EQ(scaled.abs_precision(), 60 + vp(2, y));
    ASSERT_TRUE(agree_mod(scaled, ScaledPadic2::from_rational(x * y, 200), scaled.abs_precision()));
  }
}

TEST(Scaled, AgreeModNeedsPrecision) {
  const ScaledPadic2 a = ScaledPadic2::from_rational(Rational(1, 3), 10);
  const ScaledPadic2 b = ScaledPadic2::from_rational(Rational(1, 3) + Rational(pow2(12)), 20);
  EXPECT_THROW(agree_mod(a, b, 15), PrecisionError);
  EXPECT_TRUE(agree_mod(a, b, 10));
}

TEST(Teichmuller, Examples) {
  EXPECT_EQ(teichmuller(3), -1);
  EXPECT_EQ(teichmuller(Rational(1, 4)), Rational(1, 4));
  EXPECT_EQ(teichmuller(-1), -1);
  EXPECT_EQ(teichmuller(Rational(3, 4)), Rational(-1, 4));
  EXPECT_THROW(teichmuller(0), DomainError);
}

TEST(Teichmuller, MultiplicativeAndAngle) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 1000; ++t) {
    const Rational x = random_nonzero_rational(rng), y = random_nonzero_rational(rng);
    ASSERT_EQ(teichmuller(x) * teichmuller(y), teichmuller(x * y));
    const Rational a = angle(x);
    ASSERT_EQ(vp(2, a), 0);
    ASSERT_EQ(Padic2::embed(a, 2).residue(), 1);
  }
}
