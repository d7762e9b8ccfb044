#pragma once

// Volkenborn integration over Z_2.
//
// Two back-ends: direct Riemann-style averages (1/2^M) sum_{k<2^M} f(k),
// which only ever give heuristic precision, and a Bernoulli-series
// evaluator for inverse powers, polynomials and partial-fraction sums whose
// truncation error is bounded through v_2(B_i) >= -1.

#include <functional>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "z2c/padic2.hpp"
#include "z2c/ratfun.hpp"
#include "z2c/verdict.hpp"

namespace z2c {

/// An integrand on Z_2 together with an exact evaluator at nonnegative integers.
class Integrand {
 public:
  struct InversePower {
    Rational x;
    long j = 1;
  };
  struct Polynomial {
    Poly p;
  };
  struct PartialFractionSum {
    PartialFractionDecomp d;
  };
  struct Custom {
    std::function<Rational(std::uint64_t)> eval;
  };

  /// (t + x)^-j with v_2(x) <= -2.
  static Integrand inverse_power(const Rational& x, long j) {
    if (j < 1) throw DomainError("inverse_power needs j >= 1");
    check_hurwitz_domain(x);
    return Integrand(InversePower{x, j});
  }

  static Integrand polynomial(Poly p) { return Integrand(Polynomial{std::move(p)}); }

  /// sum coeff / (t + c)^i; every shift must satisfy v_2(c) <= -2.
  static Integrand partial_fraction_sum(PartialFractionDecomp d) {
    for (const auto& [key, value] : d.terms) check_hurwitz_domain(key.shift);
    return Integrand(PartialFractionSum{std::move(d)});
  }

  /// Evaluator only; usable with the direct back-end and the Delta probes.
  static Integrand custom(std::function<Rational(std::uint64_t)> eval) {
    return Integrand(Custom{std::move(eval)});
  }

  Rational operator()(std::uint64_t k) const {
    const Rational t(static_cast<unsigned long>(k));
    return std::visit(
        [&](const auto& spec) -> Rational {
          using T = std::decay_t<decltype(spec)>;
          if constexpr (std::is_same_v<T, InversePower>) {
            return rpow(t + spec.x, -spec.j);
          } else if constexpr (std::is_same_v<T, Polynomial>) {
            return spec.p(t);
          } else if constexpr (std::is_same_v<T, PartialFractionSum>) {
            return spec.d(t);
          } else {
            return spec.eval(k);
          }
        },
        spec_);
  }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&spec_);
  }

  static void check_hurwitz_domain(const Rational& x) {
    if (x == 0 || vp(2, x) > -2) throw DomainError("outside Hurwitz domain: v_2(" + to_string(x) + ") > -2");
  }

 private:
  using Spec = std::variant<InversePower, Polynomial, PartialFractionSum, Custom>;
  explicit Integrand(Spec spec) : spec_(std::move(spec)) {}

  Spec spec_;
};

struct IntegralResult {
  enum class Method { direct, series };

  ScaledPadic2 value;
  long abs_precision = 0;
  Method method = Method::series;
  /// Direct sums carry only observed stabilization.
  bool heuristic = false;
  /// Set when the integral is known as an exact rational.
  std::optional<Rational> exact;
  /// direct: v_2(S_M - S_{M-1}) for M = 1..M_used (LONG_MAX when equal).
  std::vector<long> stabilization;
  /// series: highest Bernoulli index used.
  std::size_t truncation_index = 0;
};

namespace detail {

/// Exact sum of f(k) for k in [lo, hi) by pairwise combination of
/// unreduced fractions; one gcd at the end.
inline Rational tree_sum(const Integrand& f, std::uint64_t lo, std::uint64_t hi) {
  struct Frac {
    Integer num, den;
    unsigned level;
  };
  std::vector<Frac> stack;
  auto merge = [](Frac& a, const Frac& b) {
    a.num = a.num * b.den + b.num * a.den;
    a.den *= b.den;
    ++a.level;
  };
  for (std::uint64_t k = lo; k < hi; ++k) {
    Rational v = f(k);
    stack.push_back({v.get_num(), v.get_den(), 0});
    while (stack.size() >= 2 && stack[stack.size() - 1].level == stack[stack.size() - 2].level) {
      Frac top = std::move(stack.back());
      stack.pop_back();
      merge(stack.back(), top);
    }
  }
  Frac total{Integer(0), Integer(1), 0};
  while (!stack.empty()) {
    merge(total, stack.back());
    stack.pop_back();
  }
  return make_rational(total.num, total.den);
}

inline long diff_valuation(const Rational& a, const Rational& b) {
  Rational d = a - b;
  return d == 0 ? LONG_MAX : vp(2, d);
}

}  // namespace detail

/// (1/2^M) sum_{k < 2^M} f(k), exactly.
inline Rational direct_sum(const Integrand& f, unsigned M) {
  if (M > 40) throw DomainError("direct_sum level too large");
  const std::uint64_t count = std::uint64_t{1} << M;
  return detail::tree_sum(f, 0, count) / Rational(pow2(M));
}

/// Heuristic limit of the direct sums for M = 0..M_max. The reported
/// precision is the largest A with the last three partial sums congruent
/// modulo 2^A; agreement must grow monotonically over the final four levels.
inline IntegralResult integrate_direct(const Integrand& f, unsigned M_max, long target_bits = LONG_MAX) {
  if (M_max < 2) throw DomainError("integrate_direct needs M_max >= 2");
  IntegralResult out;
  out.method = IntegralResult::Method::direct;
  out.heuristic = true;

  Rational block_total = detail::tree_sum(f, 0, 1);
  std::vector<Rational> sums{block_total};  // sums[M] = S_M
  for (unsigned M = 1; M <= M_max; ++M) {
    const std::uint64_t lo = std::uint64_t{1} << (M - 1);
    block_total += detail::tree_sum(f, lo, 2 * lo);
    sums.push_back(block_total / Rational(pow2(M)));
    out.stabilization.push_back(detail::diff_valuation(sums[M], sums[M - 1]));
    if (M >= 3) {
      const long agree = std::min(out.stabilization[M - 1], out.stabilization[M - 2]);
      if (agree >= target_bits) break;
    }
  }
  const std::size_t levels = out.stabilization.size();
  const Rational& last = sums.back();

  bool all_equal = true;
  for (long v : out.stabilization) all_equal = all_equal && v == LONG_MAX;
  if (all_equal) {
    out.exact = last;
    out.abs_precision = Padic2::kExact;
    out.value = ScaledPadic2::from_rational(last, 1 << 20);
    return out;
  }

  if (levels >= 3) {
    const long a = out.stabilization[levels - 3];
    const long b = out.stabilization[levels - 2];
    const long c = out.stabilization[levels - 1];
    if (!(a <= b && b <= c && a < c)) {
      throw PrecisionError("non-stabilizing direct Volkenborn sums: agreement " + std::to_string(a) + ", " +
                           std::to_string(b) + ", " + std::to_string(c));
    }
  }
  out.abs_precision = std::min(out.stabilization[levels - 1], out.stabilization[levels - 2]);
  out.value = ScaledPadic2::from_rational(last, out.abs_precision);
  return out;
}

/// Integral of (t + x)^-j over Z_2 as sum_i C(-j,i) B_i x^{-j-i}, certified
/// modulo 2^A. With w = -v_2(x) >= 2 the i-th term has valuation at least
/// w(j+i) - 1, so truncating after I with w(j+I+1) - 1 >= A + 8 is safe.
inline IntegralResult integrate_series(const Rational& x, long j, long A) {
  if (j < 1) throw DomainError("integrate_series needs j >= 1");
  Integrand::check_hurwitz_domain(x);
  const long w = -vp(2, x);
  long I = (A + 9 + w - 1) / w - j - 1;
  if (I < 1) I = 1;
  const long work = std::max(A, 0L) + 9;  // bits for the doubled sum
  const Integer modulus = pow2(static_cast<unsigned long>(work));

  // y = 1/x = 2^w * u with u a 2-adic unit.
  Rational u = (1 / x) / Rational(pow2(static_cast<unsigned long>(w)));
  const Integer u_res = Padic2::embed(u, work).residue();

  bernoulli_cache().ensure(static_cast<std::size_t>(I));
  Integer total = 0;
  Integer u_pow;
  mpz_powm_ui(u_pow.get_mpz_t(), u_res.get_mpz_t(), static_cast<unsigned long>(j), modulus.get_mpz_t());
  for (long i = 0; i <= I; ++i) {
    const long shift = w * (j + i);
    if (shift - 1 >= work) break;
    const Rational b = bernoulli(static_cast<std::size_t>(i));
    if (b != 0) {
      const Rational twice_b = 2 * b;
      Integer term = binomial_general(Integer(-j), static_cast<unsigned long>(i)) *
                     Padic2::embed(twice_b, work).residue() * u_pow;
      mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(shift));
      total += term;
      mpz_fdiv_r_2exp(total.get_mpz_t(), total.get_mpz_t(), static_cast<unsigned long>(work));
    }
    u_pow = (u_pow * u_res) % modulus;
  }
  IntegralResult out;
  out.method = IntegralResult::Method::series;
  out.truncation_index = static_cast<std::size_t>(I);
  ScaledPadic2 doubled(Padic2::from_residue(total, work), 1);
  out.value = ScaledPadic2(doubled.body().truncated(A + 1), 1);
  out.abs_precision = out.value.abs_precision();
  return out;
}

/// Integral of a polynomial: sum p_i B_i, exact.
inline IntegralResult integrate_series(const Poly& p) {
  Rational total = 0;
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) total += p.coefficients()[i] * bernoulli(i);
  IntegralResult out;
  out.method = IntegralResult::Method::series;
  out.exact = total;
  out.abs_precision = Padic2::kExact;
  out.value = ScaledPadic2::from_rational(total, 1 << 20);
  out.truncation_index = p.coefficients().empty() ? 0 : p.coefficients().size() - 1;
  return out;
}

/// Integral of poly_part + sum coeff/(t+c)^i, certified modulo 2^A.
/// Each term is computed to A - v_2(coeff) bits.
inline IntegralResult integrate_series(const PartialFractionDecomp& d, long A) {
  IntegralResult out;
  out.method = IntegralResult::Method::series;
  Rational poly_value = integrate_series(d.poly_part).exact.value();
  ScaledPadic2 total = ScaledPadic2::from_rational(poly_value, A);
  for (const auto& [key, coeff] : d.terms) {
    const long need = std::max(1L, A - vp(2, coeff));
    IntegralResult term = integrate_series(key.shift, key.order, need);
    out.truncation_index = std::max(out.truncation_index, term.truncation_index);
    total = total + term.value.scaled(coeff);
  }
  out.value = total;
  out.abs_precision = total.abs_precision();
  if (total.is_exact_zero()) out.abs_precision = A;
  return out;
}

/// Checks  int f(t+k) dt = int f(t) dt + sum_{l<k} f'(l).
/// For inverse powers both sides are series values compared modulo 2^A;
/// for polynomials the identity is checked exactly.
inline Verdict translate_check(const Integrand& f, unsigned long k, long A) {
  const std::string statement = "int f(t+k) = int f(t) + sum_{l<k} f'(l)";
  if (const auto* ip = f.as<Integrand::InversePower>()) {
    const Rational shifted = ip->x + static_cast<long>(k);
    ScaledPadic2 lhs = integrate_series(shifted, ip->j, A).value;
    ScaledPadic2 rhs = integrate_series(ip->x, ip->j, A).value;
    Rational correction = 0;
    for (unsigned long l = 0; l < k; ++l) {
      correction += Rational(-ip->j) * rpow(Rational(static_cast<long>(l)) + ip->x, -(ip->j + 1));
    }
    rhs = rhs + ScaledPadic2::from_rational(correction, A);
    const ScaledPadic2 diff = lhs - rhs;
    const bool ok = agree_mod(lhs, rhs, A);
    return make_verdict("translation", statement, ok,
                        "j=" + std::to_string(ip->j) + " x=" + to_string(ip->x) + " k=" + std::to_string(k) +
                            " v2(difference)=" + diff.valuation().describe());
  }
  if (const auto* poly = f.as<Integrand::Polynomial>()) {
    const Rational lhs = integrate_series(poly->p.compose_linear(1, static_cast<long>(k))).exact.value();
    Rational rhs = integrate_series(poly->p).exact.value();
    const Poly dp = poly->p.derivative();
    for (unsigned long l = 0; l < k; ++l) rhs += dp(Rational(static_cast<long>(l)));
    return make_verdict("translation", statement, lhs == rhs,
                        "polynomial, k=" + std::to_string(k) + " lhs=" + to_string(lhs) + " rhs=" + to_string(rhs));
  }
  throw DomainError("translate_check supports inverse powers and polynomials");
}

/// Sampled witness for Delta_m(f): the minimum of
/// v_2((f(k) - f(k_-)) / (k - k_-)) over all k in [2^m, min(k_cap, 2^{m+4}))
/// plus `sample_count` random k in [2^m, k_cap]. nullopt when every sampled
/// difference vanishes.
inline std::optional<long> delta_probe(const std::function<Rational(std::uint64_t)>& f, unsigned m,
                                       std::size_t sample_count, std::uint64_t k_cap, std::uint64_t seed = 1) {
  const std::uint64_t lo = std::uint64_t{1} << m;
  if (k_cap < lo) throw DomainError("delta_probe: k_cap below 2^m");
  std::optional<long> best;
  auto visit = [&](std::uint64_t k) {
    const std::uint64_t km = k_minus(k, 2);
    const Rational diff = f(k) - f(km);
    if (diff == 0) return;
    const long v = vp(2, diff) - vp(2, Integer(static_cast<unsigned long>(k - km)));
    if (!best || v < *best) best = v;
  };
  const std::uint64_t exhaustive_end = std::min(k_cap + 1, std::uint64_t{1} << (m + 4));
  for (std::uint64_t k = lo; k < exhaustive_end; ++k) visit(k);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(lo, k_cap);
  for (std::size_t i = 0; i < sample_count; ++i) visit(pick(rng));
  return best;
}

}  // namespace z2c
