#include <gtest/gtest.h>

#include <random>

#include "z2c/ratfun.hpp"

using namespace z2c;

namespace {

Poly t_poly() { return Poly::monomial(1, 1); }

// f^{(j)}(c)/j! by repeated quotient-rule differentiation.
Rational taylor_by_derivatives(const RatFun& f, const Rational& c, unsigned long j) {
  RatFun g(f.num(), f.den());
  for (unsigned long r = 0; r < j; ++r) {
    g = RatFun(g.num().derivative() * g.den() - g.num() * g.den().derivative(), g.den() * g.den());
  }
  return g(c) / Rational(factorial(j));
}

// (4k)!(4n-4k)! / ((2k)!(2n-2k)! k!^2 (n-k)!^2)
Rational top_coefficient_closed_form(unsigned long n, unsigned long s, unsigned delta, unsigned long k) {
  const Rational inner = make_rational(factorial(4 * k) * factorial(4 * n - 4 * k),
                                       factorial(2 * k) * factorial(2 * n - 2 * k) * factorial(k) * factorial(k) *
                                           factorial(n - k) * factorial(n - k));
  Rational r = rpow(inner, static_cast<long>(s + 2));
  if (delta == 1) r *= Rational(2 * static_cast<long>(n) - 4 * static_cast<long>(k));
  return r;
}

}  // namespace

TEST(Poly, TaylorShift) {
  const Poly p({Rational(1), Rational(-3), Rational(0), Rational(2)});
  const Series at2 = p.taylor(2, 4);
  // p(2 + u) = 11 + 21u + 12u^2 + 2u^3
  EXPECT_EQ(at2, (Series{11, 21, 12, 2}));
  EXPECT_EQ(p.compose_linear(1, 2), Poly({Rational(11), Rational(21), Rational(12), Rational(2)}));
  EXPECT_EQ(p.compose_linear(-1, 0), Poly({Rational(1), Rational(3), Rational(0), Rational(-2)}));
}

TEST(Poly, DivmodAndGcd) {
  const Poly a = Poly::linear(1) * Poly::linear(2) * Poly::linear(Rational(1, 3));
  const Poly b = Poly::linear(2) * Poly::linear(5);
  auto [q, r] = a.divmod(b);
  EXPECT_EQ(q * b + r, a);
  EXPECT_LT(r.degree(), b.degree());
  EXPECT_EQ(gcd(a, b), Poly::linear(2));
}

TEST(Pochhammer, Examples) {
  EXPECT_EQ(pochhammer(Rational(1, 4), 0), Poly::constant(1));
  EXPECT_EQ(pochhammer(Rational(1, 4), 2)(0), Rational(5, 16));
  EXPECT_EQ(pochhammer(0, 3), t_poly() * Poly::linear(1) * Poly::linear(2));
}

TEST(RatFun, Derivatives) {
  const RatFun inv_t(Poly::constant(1), t_poly());
  const RatFun d = derivative(inv_t, 1);
  EXPECT_EQ(d, RatFun(Poly::constant(-1), t_poly() * t_poly()));
  const Poly p({Rational(3), Rational(1), Rational(4), Rational(1)});
  EXPECT_TRUE(derivative(RatFun::from_poly(p), 4).is_zero());
}

TEST(RatFun, RadicalDerivativeMatchesQuotientRule) {
  const RatFun a = build_A(2, 1, 1);
  RatFun slow(a.num(), a.den());
  const RatFun fast = derivative(a, 3);
  for (int r = 0; r < 3; ++r) {
    slow = RatFun(slow.num().derivative() * slow.den() - slow.num() * slow.den().derivative(), slow.den() * slow.den());
  }
  EXPECT_EQ(fast, slow);
  ASSERT_TRUE(fast.poles().has_value());
  const auto before = *a.poles();
  const auto after = *fast.poles();
  ASSERT_EQ(before.size(), after.size());
  for (std::size_t i = 0; i < after.size(); ++i) EXPECT_EQ(after[i].multiplicity, before[i].multiplicity + 3);
  EXPECT_EQ(after.front().multiplicity, 2 * 3 + 3);
}

TEST(RatFun, TaylorAt) {
  const RatFun f(Poly::constant(1), Poly::linear(1));
  EXPECT_EQ(taylor_at(f, 0, 2), (Series{1, -1, 1}));
  EXPECT_EQ(taylor_at(RatFun::from_poly(t_poly() * t_poly()), 1, 2), (Series{1, 2, 1}));
  EXPECT_EQ(taylor_at(RatFun::from_poly(Poly::linear(Rational(1, 4)).pow(2)), -1, 1),
            (Series{Rational(9, 16), Rational(-3, 2)}));
  EXPECT_THROW(taylor_at(f, -1, 2), DomainError);
}

TEST(RatFun, TaylorMatchesDerivatives) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> coef(-9, 9);
  for (int t = 0; t < 30; ++t) {
    const Poly num({Rational(coef(rng)), Rational(coef(rng)), Rational(coef(rng))});
    const Poly den = Poly::linear(make_rational(coef(rng), 4) + Rational(1, 8)) * Poly::linear(Rational(coef(rng)) + 20);
    if (num.is_zero()) continue;
    const RatFun f(num, den);
    const Rational c = make_rational(coef(rng), 3);
    const Series ser = taylor_at(f, c, 4);
    for (unsigned long j = 0; j <= 4; ++j) ASSERT_EQ(ser[j], taylor_by_derivatives(f, c, j)) << t << " " << j;
  }
}

TEST(Construction, BuildA) {
  const RatFun a = build_A(1, 0, 0);
  const Poly num = Rational(pow2(12)) * Poly::linear(Rational(1, 4)).pow(2) * Poly::linear(Rational(3, 4)).pow(2);
  const Poly den = (t_poly() * Poly::linear(1)).pow(4);
  EXPECT_EQ(a, RatFun(num, den));
  EXPECT_EQ(a.degree(), -4);
  EXPECT_TRUE(reflection_symmetric(a, 1, 1));
  EXPECT_TRUE(reflection_symmetric_expanded(a, 1, 1));
  EXPECT_EQ(build_A(3, 1, 1).degree(), -5);
}

TEST(Construction, BuildB) {
  const RatFun b = build_B(1, 0);
  const Poly num = Rational(pow2(6)) * Poly::linear(Rational(3, 4)).pow(2);
  EXPECT_EQ(b, RatFun(num, (t_poly() * Poly::linear(1)).pow(2)));
  EXPECT_EQ(b.degree(), -2);
  EXPECT_EQ(build_B(2, 1).den(), (t_poly() * Poly::linear(1) * Poly::linear(2)).pow(3));
}

TEST(Construction, SymmetryBothForms) {
  for (unsigned long n = 1; n <= 6; ++n) {
    for (unsigned delta = 0; delta <= 1; ++delta) {
      const RatFun a = build_A(n, 1, delta);
      const int sign = delta == 1 ? -1 : 1;
      EXPECT_TRUE(reflection_symmetric(a, n, sign));
      EXPECT_TRUE(reflection_symmetric_expanded(a, n, sign));
      EXPECT_FALSE(reflection_symmetric_expanded(a, n, -sign));
    }
  }
}

TEST(PartialFractions, Examples) {
  const PartialFractionDecomp d = partial_fractions(build_A(1, 0, 0));
  EXPECT_EQ(d.coefficient(0, 4), 144);
  EXPECT_EQ(d.coefficient(1, 4), 144);
  const RatFun simple(Poly::constant(1), t_poly() * Poly::linear(1));
  const std::vector<Pole> poles{{0, 1}, {1, 1}};
  const PartialFractionDecomp e = partial_fractions(simple, poles);
  EXPECT_EQ(e.coefficient(0, 1), 1);
  EXPECT_EQ(e.coefficient(1, 1), -1);
  EXPECT_EQ(e.terms.size(), 2u);
}

TEST(PartialFractions, FactoredAndGenericRoutesAgree) {
  for (unsigned long n = 1; n <= 4; ++n) {
    for (unsigned long s = 0; s <= 2; ++s) {
      const RatFun a = build_A(n, s, static_cast<unsigned>(n % 2));
      const RatFun plain(a.num(), a.den());
      const PartialFractionDecomp fast = partial_fractions(a);
      const PartialFractionDecomp slow = partial_fractions(plain, *a.poles());
      EXPECT_EQ(fast.terms, slow.terms) << n << " " << s;
      EXPECT_TRUE(reassembles_to(fast, a));
    }
  }
}

TEST(PartialFractions, ReassemblesRandomFunctions) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long> coef(-6, 6);
  std::uniform_int_distribution<long> mult(1, 3);
  for (int t = 0; t < 40; ++t) {
    std::vector<Pole> poles{{make_rational(coef(rng), 4) + Rational(1, 8), mult(rng)}, {Rational(coef(rng)) + 10, mult(rng)}};
    Poly den = Poly::constant(1);
    for (const auto& p : poles) den = den * Poly::linear(p.shift).pow(static_cast<unsigned long>(p.multiplicity));
    std::vector<Rational> c;
    for (int i = 0; i < 6; ++i) c.push_back(Rational(coef(rng)));
    const Poly num(c);
    if (num.is_zero()) continue;
    const RatFun f(num * Poly::constant(1), den);
    const PartialFractionDecomp d = partial_fractions(f, poles);
    ASSERT_TRUE(reassembles_to(d, f)) << t;
  }
}

TEST(PartialFractions, IncompletePoleListRejected) {
  const RatFun f(Poly::constant(1), t_poly() * Poly::linear(1).pow(2));
  const std::vector<Pole> partial{{0, 1}, {1, 1}};
  EXPECT_THROW(partial_fractions(f, partial), DomainError);
}

TEST(PartialFractions, DerivativeTermwise) {
  const RatFun a = build_A(1, 0, 0);
  const PartialFractionDecomp d2 = partial_fractions(a).derivative(2);
  EXPECT_EQ(d2.reassemble(), derivative(a, 2));
}

TEST(PartialFractions, ResiduesSumToZero) {
  for (unsigned long n = 1; n <= 8; ++n) {
    for (unsigned long s = 0; s <= 2; ++s) {
      const PartialFractionDecomp d = partial_fractions(build_A(n, s, 0));
      Rational total = 0;
      for (unsigned long k = 0; k <= n; ++k) total += d.coefficient(Rational(static_cast<long>(k)), 1);
      EXPECT_EQ(total, 0);
    }
  }
}

TEST(PartialFractions, CoefficientSymmetryAndClosedForm) {
  for (unsigned long n = 1; n <= 15; ++n) {
    for (unsigned long s = 0; s <= 2; ++s) {
      for (unsigned delta = 0; delta <= 1; ++delta) {
        const PartialFractionDecomp d = partial_fractions(build_A(n, s, delta));
        ASSERT_TRUE(coefficient_symmetric(d, n, delta == 1 ? -1 : 1)) << n << s << delta;
        if (s > 1) continue;
        for (unsigned long k = 0; k <= n; ++k) {
          ASSERT_EQ(d.coefficient(Rational(static_cast<long>(k)), static_cast<long>(2 * s + 4)),
                    top_coefficient_closed_form(n, s, delta, k))
              << n << " " << s << " " << delta << " " << k;
        }
      }
    }
  }
}

TEST(Lemma41, Passes) {
  EXPECT_TRUE(lemma41_check(3, 3).passed());
  EXPECT_TRUE(lemma41_check(7, 4).passed());
  EXPECT_TRUE(lemma41_check(12, 6).passed());
}
