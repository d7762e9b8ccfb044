#pragma once

// Truncated 2-adic arithmetic with absolute precision tracking.
//
// A Padic2 is a 2-adic integer known modulo 2^A. Values with negative
// valuation are carried as ScaledPadic2 = body / 2^exponent so that Padic2
// itself never holds a hidden denominator.

#include <algorithm>
#include <climits>
#include <string>

#include "z2c/numcore.hpp"

namespace z2c {

/// Reading of v_2 from a finite-precision value.
struct Valuation2Result {
  enum class Kind { exact, below_precision, exact_zero };

  Kind kind = Kind::exact_zero;
  /// exact: the valuation. below_precision: a lower bound (the precision).
  long value = 0;

  static Valuation2Result exact(long v) { return {Kind::exact, v}; }
  static Valuation2Result below(long bound) { return {Kind::below_precision, bound}; }
  static Valuation2Result zero() { return {Kind::exact_zero, 0}; }

  bool is_exact() const { return kind == Kind::exact; }

  std::string describe() const {
    switch (kind) {
      case Kind::exact: return std::to_string(value);
      case Kind::below_precision: return ">=" + std::to_string(value) + " (below precision)";
      case Kind::exact_zero: return "exact zero";
    }
    return "?";
  }
};

namespace detail {

constexpr long kInfinitePrecision = LONG_MAX;

inline long sat_add(long a, long b) {
  if (a == kInfinitePrecision || b == kInfinitePrecision) return kInfinitePrecision;
  return a + b;
}

inline Integer reduce_mod_2exp(const Integer& x, unsigned long bits) {
  Integer r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), x.get_mpz_t(), bits);
  return r;
}

}  // namespace detail

class Padic2 {
 public:
  static constexpr long kExact = detail::kInfinitePrecision;

  /// The exact zero.
  Padic2() = default;

  static Padic2 exact_zero() { return Padic2(); }

  /// Residue r taken modulo 2^precision.
  static Padic2 from_residue(const Integer& r, long precision) {
    if (precision < 0) throw DomainError("negative precision");
    Padic2 out;
    out.exact_zero_ = false;
    out.precision_ = precision;
    out.residue_ = detail::reduce_mod_2exp(r, static_cast<unsigned long>(precision));
    return out;
  }

  /// Image of a 2-integral rational modulo 2^precision.
  static Padic2 embed(const Rational& x, long precision) {
    if (x == 0) return exact_zero();
    if (mpz_even_p(x.get_den().get_mpz_t())) throw DomainError("not 2-integral: " + to_string(x));
    if (precision < 0) throw DomainError("negative precision");
    const Integer modulus = pow2(static_cast<unsigned long>(precision));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), x.get_den().get_mpz_t(), modulus.get_mpz_t());
    if (precision == 0) inv = 0;
    return from_residue(x.get_num() * inv, precision);
  }

  bool is_exact_zero() const { return exact_zero_; }
  const Integer& residue() const { return residue_; }
  long precision() const { return precision_; }

  Valuation2Result valuation() const {
    if (exact_zero_) return Valuation2Result::zero();
    if (residue_ == 0) return Valuation2Result::below(precision_);
    return Valuation2Result::exact(static_cast<long>(mpz_scan1(residue_.get_mpz_t(), 0)));
  }

  /// Lower bound on the true valuation (the precision when nothing is visible).
  long valuation_floor() const {
    auto v = valuation();
    return v.kind == Valuation2Result::Kind::exact_zero ? kExact : v.value;
  }

  /// Same value known to fewer bits.
  Padic2 truncated(long precision) const {
    if (exact_zero_) return *this;
    if (precision >= precision_) return *this;
    return from_residue(residue_, precision);
  }

  /// Multiplication by 2^d; gains d bits of absolute precision.
  Padic2 shifted_left(unsigned long d) const {
    if (exact_zero_) return *this;
    Integer r;
    mpz_mul_2exp(r.get_mpz_t(), residue_.get_mpz_t(), d);
    return from_residue(r, precision_ + static_cast<long>(d));
  }

  friend Padic2 operator+(const Padic2& a, const Padic2& b) {
    if (a.exact_zero_) return b;
    if (b.exact_zero_) return a;
    return from_residue(a.residue_ + b.residue_, std::min(a.precision_, b.precision_));
  }

  Padic2 operator-() const {
    if (exact_zero_) return *this;
    return from_residue(-residue_, precision_);
  }

  friend Padic2 operator-(const Padic2& a, const Padic2& b) { return a + (-b); }

  /// Precision of the product is min(A1 + v2, A2 + v1, A1 + A2), where a
  /// valuation hidden below precision contributes its lower bound.
  friend Padic2 operator*(const Padic2& a, const Padic2& b) {
    if (a.exact_zero_ || b.exact_zero_) return exact_zero();
    const long va = a.valuation_floor();
    const long vb = b.valuation_floor();
    const long precision =
        std::min({a.precision_ + vb, b.precision_ + va, a.precision_ + b.precision_});
    return from_residue(a.residue_ * b.residue_, precision);
  }

  /// Inverse of a unit, at the same precision.
  Padic2 inverse() const {
    if (exact_zero_ || mpz_even_p(residue_.get_mpz_t()) || precision_ == 0) {
      throw DomainError("inverse of a non-unit");
    }
    const Integer modulus = pow2(static_cast<unsigned long>(precision_));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), residue_.get_mpz_t(), modulus.get_mpz_t());
    return from_residue(inv, precision_);
  }

  /// Residues agree modulo 2^min(A1, A2).
  bool equal_at_precision(const Padic2& other) const {
    const long p = std::min(precision_, other.precision_);
    if (p == kExact) return true;  // both exact zero
    return detail::reduce_mod_2exp(residue_ - other.residue_, static_cast<unsigned long>(p)) == 0;
  }

 private:
  Integer residue_ = 0;
  long precision_ = kExact;
  bool exact_zero_ = true;
};

/// body / 2^exponent with exponent >= 0: an element of Q_2 known modulo
/// 2^(body precision - exponent).
class ScaledPadic2 {
 public:
  ScaledPadic2() = default;
  ScaledPadic2(Padic2 body, long exponent) : body_(std::move(body)), exponent_(exponent) {
    normalize();
  }

  /// x known modulo 2^abs_precision.
  static ScaledPadic2 from_rational(const Rational& x, long abs_precision) {
    if (x == 0) return {};
    const long v = vp(2, x);
    const long exponent = std::max(0L, -v);
    Rational body = x;
    if (exponent > 0) body *= Rational(pow2(static_cast<unsigned long>(exponent)));
    return ScaledPadic2(Padic2::embed(body, std::max(0L, abs_precision + exponent)), exponent);
  }

  const Padic2& body() const { return body_; }
  long exponent() const { return exponent_; }
  bool is_exact_zero() const { return body_.is_exact_zero(); }

  long abs_precision() const {
    if (body_.precision() == Padic2::kExact) return Padic2::kExact;
    return body_.precision() - exponent_;
  }

  Valuation2Result valuation() const {
    auto v = body_.valuation();
    if (v.kind != Valuation2Result::Kind::exact_zero) v.value -= exponent_;
    return v;
  }

  long valuation_floor() const {
    auto v = valuation();
    return v.kind == Valuation2Result::Kind::exact_zero ? Padic2::kExact : v.value;
  }

  friend ScaledPadic2 operator+(const ScaledPadic2& a, const ScaledPadic2& b) {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    const long e = std::max(a.exponent_, b.exponent_);
    Padic2 lhs = a.body_.shifted_left(static_cast<unsigned long>(e - a.exponent_));
    Padic2 rhs = b.body_.shifted_left(static_cast<unsigned long>(e - b.exponent_));
    return ScaledPadic2(lhs + rhs, e);
  }

  ScaledPadic2 operator-() const { return ScaledPadic2(-body_, exponent_); }

  friend ScaledPadic2 operator-(const ScaledPadic2& a, const ScaledPadic2& b) { return a + (-b); }

  friend ScaledPadic2 operator*(const ScaledPadic2& a, const ScaledPadic2& b) {
    return ScaledPadic2(a.body_ * b.body_, a.exponent_ + b.exponent_);
  }

  /// Exact multiplication by a rational; absolute precision moves by v_2(r).
  ScaledPadic2 scaled(const Rational& r) const {
    if (r == 0) return {};
    if (is_exact_zero()) return *this;
    const long v = vp(2, r);
    Rational unit = r;
    if (v > 0) unit /= Rational(pow2(static_cast<unsigned long>(v)));
    if (v < 0) unit *= Rational(pow2(static_cast<unsigned long>(-v)));
    Padic2 body = body_ * Padic2::embed(unit, body_.precision());
    return ScaledPadic2(body, exponent_ - v);
  }

  /// The value modulo 2^abs_precision as an exact rational representative
  /// (body residue / 2^exponent).
  Rational representative() const {
    if (is_exact_zero()) return 0;
    return make_rational(body_.residue(), pow2(static_cast<unsigned long>(exponent_)));
  }

 private:
  void normalize() {
    if (body_.is_exact_zero()) {
      exponent_ = 0;
      return;
    }
    if (exponent_ < 0) {
      body_ = body_.shifted_left(static_cast<unsigned long>(-exponent_));
      exponent_ = 0;
    }
  }

  Padic2 body_;
  long exponent_ = 0;
};

/// True when a and b are congruent modulo 2^bits. Throws PrecisionError when
/// either side is not known to that many bits and the difference is invisible.
inline bool agree_mod(const ScaledPadic2& a, const ScaledPadic2& b, long bits) {
  ScaledPadic2 diff = a - b;
  auto v = diff.valuation();
  switch (v.kind) {
    case Valuation2Result::Kind::exact_zero: return true;
    case Valuation2Result::Kind::exact: return v.value >= bits;
    case Valuation2Result::Kind::below_precision:
      if (v.value >= bits) return true;
      throw PrecisionError("operands known only modulo 2^" + std::to_string(v.value) +
                           ", cannot compare modulo 2^" + std::to_string(bits));
  }
  return false;
}

/// Teichmueller representative at p = 2: 2^v * eps with eps = +-1 and
/// eps congruent to the unit part modulo 4.
inline Rational teichmuller(const Rational& x) {
  if (x == 0) throw DomainError("teichmuller of zero");
  const long v = vp(2, x);
  Integer num = x.get_num();
  Integer den = x.get_den();
  if (v > 0) mpz_tdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(v));
  if (v < 0) mpz_tdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-v));
  // den^-1 = den mod 4 for odd den.
  Integer prod = num * den;
  Integer r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), prod.get_mpz_t(), 2);
  const int eps = (r == 1) ? 1 : -1;
  Rational power = v >= 0 ? Rational(pow2(static_cast<unsigned long>(v)))
                          : make_rational(1, pow2(static_cast<unsigned long>(-v)));
  return eps * power;
}

/// <x> = x / omega(x), a 1-unit (congruent to 1 mod 4).
inline Rational angle(const Rational& x) { return x / teichmuller(x); }

}  // namespace z2c
