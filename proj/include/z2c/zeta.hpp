#pragma once

// 2-adic Hurwitz zeta values
//   zeta_2(j, x) = omega(x)^(j-1) / (j-1) * int (t + x)^-(j-1) dt,  v_2(x) <= -2,
// and the special values zeta_2(j) = zeta_2(j, 1/4) / 2 for odd j >= 3.

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "z2c/volkenborn.hpp"

namespace z2c {

struct ZetaValue {
  long j = 0;
  Rational x;
  ScaledPadic2 value;
  long abs_precision = 0;
};

/// zeta_2(j, x) modulo 2^A.
inline ZetaValue hurwitz_zeta2(long j, const Rational& x, long A) {
  if (j < 2) throw DomainError("hurwitz_zeta2 needs j >= 2");
  Integrand::check_hurwitz_domain(x);
  const Rational factor = rpow(teichmuller(x), j - 1) / Rational(j - 1);
  const long need = std::max(1L, A - vp(2, factor));
  IntegralResult integral = integrate_series(x, j - 1, need);
  ZetaValue out;
  out.j = j;
  out.x = x;
  out.value = integral.value.scaled(factor);
  out.abs_precision = out.value.abs_precision();
  return out;
}

/// zeta_2(j) for odd j >= 3.
inline ZetaValue zeta2_at(long j, long A) {
  if (j < 3 || j % 2 == 0) {
    throw DomainError("vanishing branch: zeta_2(j) requires odd j >= 3, got " + std::to_string(j));
  }
  ZetaValue h = hurwitz_zeta2(j, Rational(1, 4), A + 1);
  h.x = 0;
  h.value = h.value.scaled(Rational(1, 2));
  h.abs_precision = h.value.abs_precision();
  return h;
}

/// zeta_2(j, x) = zeta_2(j, 1 - x) modulo 2^A.
inline Verdict reflection_check(long j, const Rational& x, long A) {
  const ZetaValue lhs = hurwitz_zeta2(j, x, A);
  const ZetaValue rhs = hurwitz_zeta2(j, 1 - x, A);
  const ScaledPadic2 diff = lhs.value - rhs.value;
  return make_verdict("reflection", "zeta_2(j, x) = zeta_2(j, 1 - x)", agree_mod(lhs.value, rhs.value, A),
                      "j=" + std::to_string(j) + " x=" + to_string(x) + " v2(difference)=" +
                          diff.valuation().describe());
}

/// Canonical pair (residue, e) with value = residue / 2^e, e = max(0, -v_2),
/// residue reduced modulo 2^(A + e).
inline std::pair<Integer, long> canonical_form(const ScaledPadic2& value, long A) {
  const Valuation2Result v = value.valuation();
  const long e = v.is_exact() ? std::max(0L, -v.value) : 0;
  if (!v.is_exact()) return {Integer(0), 0};
  Integer r = value.body().residue();
  const long drop = value.exponent() - e;
  mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(drop));
  mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(A + e));
  return {r, e};
}

/// One reference line: "j x A residue_hex scaling_exponent". x = 0 marks zeta_2(j).
struct GoldenZeta {
  long j = 0;
  Rational x;
  long A = 0;
  Integer residue;
  long exponent = 0;

  std::string format() const {
    return std::to_string(j) + ' ' + to_string(x) + ' ' + std::to_string(A) + ' ' + residue.get_str(16) + ' ' +
           std::to_string(exponent);
  }

  static GoldenZeta parse(const std::string& line, std::size_t line_no = 0) {
    std::istringstream in(line);
    std::string j, x, a, hex, e;
    if (!(in >> j >> x >> a >> hex >> e)) throw FormatError("expected five fields", line_no);
    GoldenZeta g;
    try {
      g.j = std::stol(j);
      g.x = parse_rational(x);
      g.A = std::stol(a);
      g.exponent = std::stol(e);
    } catch (const std::exception&) {
      throw FormatError("bad numeric field", line_no);
    }
    if (g.residue.set_str(hex, 16) != 0) throw FormatError("bad hex residue", line_no);
    return g;
  }
};

inline GoldenZeta golden_record(long j, const Rational& x, long A) {
  const ZetaValue z = x == 0 ? zeta2_at(j, A) : hurwitz_zeta2(j, x, A);
  auto [r, e] = canonical_form(z.value, A);
  return GoldenZeta{j, x, A, r, e};
}

}  // namespace z2c
