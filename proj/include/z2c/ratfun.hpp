#pragma once

// Exact univariate polynomials and rational functions over Q, the
// constructions A_n / B_n, Taylor expansion at rational points and
// partial-fraction extraction.

#include <climits>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "z2c/numcore.hpp"
#include "z2c/verdict.hpp"

namespace z2c {

// ---------------------------------------------------------------------------
// Truncated power series in u, as coefficient vectors of fixed length.

using Series = std::vector<Rational>;

inline Series series_mul(const Series& a, const Series& b, std::size_t length) {
  Series out(length, Rational(0));
  for (std::size_t i = 0; i < std::min(length, a.size()); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < length && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// a / b as series; b[0] must be nonzero.
inline Series series_div(const Series& a, const Series& b, std::size_t length) {
  if (b.empty() || b[0] == 0) throw DomainError("series division by a non-unit");
  Series out(length, Rational(0));
  const Rational inv0 = 1 / b[0];
  for (std::size_t r = 0; r < length; ++r) {
    Rational acc = r < a.size() ? a[r] : Rational(0);
    for (std::size_t j = 1; j <= r && j < b.size(); ++j) acc -= b[j] * out[r - j];
    out[r] = acc * inv0;
  }
  return out;
}

/// (a + u)^e for integer e, a != 0 when e < 0.
inline Series linear_power_series(const Rational& a, long e, std::size_t length) {
  Series out(length, Rational(0));
  if (e >= 0) {
    for (std::size_t r = 0; r < length && r <= static_cast<std::size_t>(e); ++r) {
      out[r] = Rational(binomial(static_cast<unsigned long>(e), r)) * rpow(a, e - static_cast<long>(r));
    }
    return out;
  }
  if (a == 0) throw DomainError("pole at expansion point");
  for (std::size_t r = 0; r < length; ++r) {
    out[r] = Rational(binomial_general(Integer(e), r)) * rpow(a, e - static_cast<long>(r));
  }
  return out;
}

// ---------------------------------------------------------------------------

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

  static Poly constant(const Rational& c) { return Poly({c}); }

  /// t + shift.
  static Poly linear(const Rational& shift) { return Poly({shift, Rational(1)}); }

  static Poly monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Poly(std::move(v));
  }

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Poly(std::move(v));
  }

  Poly operator-() const {
    std::vector<Rational> v = c_;
    for (auto& x : v) x = -x;
    return Poly(std::move(v));
  }

  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }

  friend Poly operator*(const Rational& s, const Poly& p) {
    if (s == 0) return {};
    std::vector<Rational> v = p.c_;
    for (auto& x : v) x *= s;
    return Poly(std::move(v));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly pow(unsigned long e) const {
    Poly result = constant(1);
    Poly base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  Poly derivative(unsigned long order = 1) const {
    Poly p = *this;
    for (unsigned long r = 0; r < order && !p.is_zero(); ++r) {
      std::vector<Rational> v;
      for (std::size_t i = 1; i < p.c_.size(); ++i) v.push_back(p.c_[i] * static_cast<unsigned long>(i));
      p = Poly(std::move(v));
    }
    return p;
  }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    if (degree() < d.degree()) return {Poly(), *this};
    std::vector<Rational> rem = c_;
    std::vector<Rational> quot(c_.size() - d.c_.size() + 1, Rational(0));
    const Rational lead_inv = 1 / d.leading();
    for (std::size_t i = quot.size(); i-- > 0;) {
      Rational q = rem[i + d.c_.size() - 1] * lead_inv;
      quot[i] = q;
      if (q == 0) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[i + j] -= q * d.c_[j];
    }
    rem.resize(d.c_.size() - 1);
    return {Poly(std::move(quot)), Poly(std::move(rem))};
  }

  /// Coefficients of p(c + u) in u, orders 0..order-1.
  Series taylor(const Rational& c, std::size_t order) const {
    Series out(order, Rational(0));
    std::vector<Rational> work = c_;
    for (std::size_t r = 0; r < order && !work.empty(); ++r) {
      // Synthetic division by (t - c): remainder is the value at c.
      Rational carry = 0;
      for (std::size_t i = work.size(); i-- > 0;) {
        Rational next = work[i] + carry * c;
        work[i] = carry;
        carry = next;
      }
      out[r] = carry;
      work.pop_back();
    }
    return out;
  }

  /// p(a t + b).
  Poly compose_linear(const Rational& a, const Rational& b) const {
    Series shifted = taylor(b, c_.size());
    Rational scale = 1;
    for (auto& x : shifted) {
      x *= scale;
      scale *= a;
    }
    return Poly(std::move(shifted));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return (1 / leading()) * (*this);
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

// ---------------------------------------------------------------------------

/// (t + shift)^exponent; negative exponents are denominator factors.
struct LinearFactor {
  Rational shift;
  long exponent = 0;
};

struct Factorization {
  Rational constant = 1;
  std::vector<LinearFactor> factors;  // distinct shifts, nonzero exponents
};

/// (t + shift)^multiplicity divides the denominator.
struct Pole {
  Rational shift;
  long multiplicity = 0;
};

namespace detail {

/// Expands constant * prod (t + p/q)^e (e > 0) using integer arithmetic.
inline Poly expand_linear_product(const Rational& constant, const std::vector<LinearFactor>& factors) {
  std::vector<Integer> coeffs{Integer(1)};
  Integer scale_den = 1;
  for (const auto& f : factors) {
    const Integer& p = f.shift.get_num();
    const Integer& q = f.shift.get_den();
    for (long e = 0; e < f.exponent; ++e) {
      // multiply by (q t + p)
      coeffs.push_back(Integer(0));
      for (std::size_t i = coeffs.size() - 1; i > 0; --i) coeffs[i] = coeffs[i] * p + coeffs[i - 1] * q;
      coeffs[0] *= p;
      scale_den *= q;
    }
  }
  Rational scale = constant / Rational(scale_den);
  std::vector<Rational> out;
  out.reserve(coeffs.size());
  for (auto& c : coeffs) out.push_back(Rational(c) * scale);
  return Poly(std::move(out));
}

inline Factorization merge_factors(const Factorization& in) {
  std::map<Rational, long> merged;
  for (const auto& f : in.factors) merged[f.shift] += f.exponent;
  Factorization out{in.constant, {}};
  for (const auto& [shift, e] : merged) {
    if (e != 0) out.factors.push_back({shift, e});
  }
  return out;
}

}  // namespace detail

class RatFun {
 public:
  RatFun() : num_(), den_(Poly::constant(1)) { poles_ = std::vector<Pole>{}; }

  /// num / den reduced to lowest terms with monic denominator.
  RatFun(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw DomainError("zero denominator polynomial");
    if (num.is_zero()) {
      num_ = Poly();
      den_ = Poly::constant(1);
      poles_ = std::vector<Pole>{};
      return;
    }
    Poly g = gcd(num, den);
    Poly n = num.divmod(g).first;
    Poly d = den.divmod(g).first;
    const Rational lead = d.leading();
    num_ = (1 / lead) * n;
    den_ = (1 / lead) * d;
    if (den_.degree() == 0) poles_ = std::vector<Pole>{};
  }

  static RatFun from_poly(const Poly& p) { return RatFun(p, Poly::constant(1)); }

  /// Builds constant * prod (t + c)^e, keeping the factor list; common
  /// shifts in numerator and denominator cancel.
  static RatFun from_factors(const Factorization& raw) {
    Factorization f = detail::merge_factors(raw);
    std::vector<LinearFactor> up, down;
    std::vector<Pole> poles;
    for (const auto& lf : f.factors) {
      if (lf.exponent > 0) {
        up.push_back(lf);
      } else {
        down.push_back({lf.shift, -lf.exponent});
        poles.push_back({lf.shift, -lf.exponent});
      }
    }
    RatFun out;
    out.num_ = f.constant == 0 ? Poly() : detail::expand_linear_product(f.constant, up);
    out.den_ = detail::expand_linear_product(1, down);
    out.poles_ = std::move(poles);
    if (f.constant != 0) out.factored_ = std::move(f);
    return out;
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  long degree() const { return num_.is_zero() ? LONG_MIN : num_.degree() - den_.degree(); }
  bool is_zero() const { return num_.is_zero(); }

  /// Denominator roots with multiplicities, when known.
  const std::optional<std::vector<Pole>>& poles() const { return poles_; }
  const std::optional<Factorization>& factorization() const { return factored_; }

  Rational operator()(const Rational& t) const {
    Rational d = den_(t);
    if (d == 0) throw DomainError("evaluation at a pole");
    return num_(t) / d;
  }

  /// f * p, keeping the pole list when p does not vanish at any pole.
  RatFun times(const Poly& p) const {
    if (poles_) {
      bool clean = true;
      for (const auto& pole : *poles_) {
        if (p(-pole.shift) == 0) clean = false;
      }
      if (clean) {
        RatFun out;
        out.num_ = num_ * p;
        out.den_ = den_;
        out.poles_ = out.num_.is_zero() ? std::vector<Pole>{} : *poles_;
        return out;
      }
    }
    return RatFun(num_ * p, den_);
  }

  RatFun scaled(const Rational& c) const {
    RatFun out = *this;
    out.num_ = c * num_;
    if (c == 0) {
      out.den_ = Poly::constant(1);
      out.poles_ = std::vector<Pole>{};
    }
    if (out.factored_) {
      if (c == 0) {
        out.factored_.reset();
      } else {
        out.factored_->constant *= c;
      }
    }
    return out;
  }

  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  friend RatFun derivative_once(const RatFun& f);

  Poly num_;
  Poly den_;
  std::optional<std::vector<Pole>> poles_;
  std::optional<Factorization> factored_;
};

/// First derivative. With known poles the result is assembled directly in
/// lowest terms: every pole order rises by exactly one.
inline RatFun derivative_once(const RatFun& f) {
  if (f.is_zero()) return f;
  if (!f.poles_) {
    return RatFun(f.num_.derivative() * f.den_ - f.num_ * f.den_.derivative(), f.den_ * f.den_);
  }
  const auto& poles = *f.poles_;
  Poly radical = Poly::constant(1);
  for (const auto& p : poles) radical = radical * Poly::linear(p.shift);
  Poly log_part;  // sum_k m_k * radical / (t + c_k)
  for (std::size_t k = 0; k < poles.size(); ++k) {
    Poly term = Poly::constant(Rational(poles[k].multiplicity));
    for (std::size_t l = 0; l < poles.size(); ++l) {
      if (l != k) term = term * Poly::linear(poles[l].shift);
    }
    log_part = log_part + term;
  }
  RatFun out;
  out.num_ = f.num_.derivative() * radical - f.num_ * log_part;
  out.den_ = f.den_ * radical;
  std::vector<Pole> raised = poles;
  for (auto& p : raised) ++p.multiplicity;
  out.poles_ = out.num_.is_zero() ? std::vector<Pole>{} : raised;
  if (out.num_.is_zero()) out.den_ = Poly::constant(1);
  return out;
}

inline RatFun derivative(const RatFun& f, unsigned long order) {
  RatFun g = f;
  for (unsigned long r = 0; r < order; ++r) g = derivative_once(g);
  return g;
}

/// Taylor coefficients of f around t = c, orders 0..order (inclusive).
inline Series taylor_at(const RatFun& f, const Rational& c, std::size_t order) {
  const std::size_t length = order + 1;
  Series den = f.den().taylor(c, length);
  if (den[0] == 0) throw DomainError("pole at expansion point");
  return series_div(f.num().taylor(c, length), den, length);
}

/// (t + alpha)_k = (t+alpha)(t+alpha+1)...(t+alpha+k-1).
inline Poly pochhammer(const Rational& alpha, unsigned long k) {
  std::vector<LinearFactor> factors;
  for (unsigned long j = 0; j < k; ++j) factors.push_back({alpha + static_cast<long>(j), 1});
  return detail::expand_linear_product(1, factors);
}

// ---------------------------------------------------------------------------

/// Ordered key (shift, order) for the term coefficient / (t + shift)^order.
struct PoleKey {
  Rational shift;
  long order = 1;

  friend bool operator<(const PoleKey& a, const PoleKey& b) {
    if (a.shift != b.shift) return a.shift < b.shift;
    return a.order < b.order;
  }
  friend bool operator==(const PoleKey& a, const PoleKey& b) { return a.shift == b.shift && a.order == b.order; }
};

class PartialFractionDecomp {
 public:
  Poly poly_part;
  std::map<PoleKey, Rational> terms;  // nonzero coefficients only

  Rational coefficient(const Rational& shift, long order) const {
    auto it = terms.find(PoleKey{shift, order});
    return it == terms.end() ? Rational(0) : it->second;
  }

  void add(const Rational& shift, long order, const Rational& value) {
    if (value == 0) return;
    auto [it, inserted] = terms.emplace(PoleKey{shift, order}, value);
    if (!inserted) {
      it->second += value;
      if (it->second == 0) terms.erase(it);
    }
  }

  long max_order() const {
    long m = 0;
    for (const auto& [key, value] : terms) m = std::max(m, key.order);
    return m;
  }

  Rational operator()(const Rational& t) const {
    Rational acc = poly_part(t);
    for (const auto& [key, value] : terms) {
      Rational base = t + key.shift;
      if (base == 0) throw DomainError("evaluation at a pole");
      acc += value * rpow(base, -key.order);
    }
    return acc;
  }

  /// s-th derivative, term by term.
  PartialFractionDecomp derivative(unsigned long s) const {
    PartialFractionDecomp out;
    out.poly_part = poly_part.derivative(s);
    for (const auto& [key, value] : terms) {
      // d^s/dt^s (t+c)^-i = (-1)^s (i)_s (t+c)^-(i+s)
      Integer rising = 1;
      for (unsigned long r = 0; r < s; ++r) rising *= key.order + static_cast<long>(r);
      Rational coeff = value * Rational(rising);
      if (s % 2 == 1) coeff = -coeff;
      out.add(key.shift, key.order + static_cast<long>(s), coeff);
    }
    return out;
  }

  /// g(t) = f(t + offset).
  PartialFractionDecomp translated(const Rational& offset) const {
    PartialFractionDecomp out;
    out.poly_part = poly_part.compose_linear(1, offset);
    for (const auto& [key, value] : terms) out.add(key.shift + offset, key.order, value);
    return out;
  }

  /// Recombines everything over the common denominator.
  RatFun reassemble() const {
    std::map<Rational, long> top;
    for (const auto& [key, value] : terms) top[key.shift] = std::max(top[key.shift], key.order);
    Factorization den_factors;
    for (const auto& [shift, order] : top) den_factors.factors.push_back({shift, order});
    Poly den = detail::expand_linear_product(1, den_factors.factors);
    Poly num = poly_part * den;
    for (const auto& [key, value] : terms) {
      std::vector<LinearFactor> rest;
      for (const auto& [shift, order] : top) {
        long e = shift == key.shift ? order - key.order : order;
        if (e > 0) rest.push_back({shift, e});
      }
      num = num + detail::expand_linear_product(value, rest);
    }
    return RatFun(num, den);
  }
};

/// Partial fractions of f given its poles. The coefficient of
/// 1/(t+c)^i is the order-(M-i) Taylor coefficient of (t+c)^M f(t) at t = -c.
/// Multiplicities may exceed the true pole orders; missing poles are an error.
inline PartialFractionDecomp partial_fractions(const RatFun& f, std::span<const Pole> poles) {
  PartialFractionDecomp out;
  if (f.is_zero()) return out;

  std::vector<LinearFactor> listed;
  for (const auto& p : poles) {
    if (p.multiplicity <= 0) throw DomainError("pole multiplicity must be positive");
    listed.push_back({p.shift, p.multiplicity});
  }

  // Proper part numerator: f = q + r / den.
  Poly remainder = f.num();
  if (f.num().degree() >= f.den().degree()) {
    auto [q, r] = f.num().divmod(f.den());
    out.poly_part = q;
    remainder = r;
  }

  const auto& factored = f.factorization();
  Poly numerator;  // f = poly_part + numerator / prod listed, generic route only
  if (factored) {
    for (const auto& known : *f.poles()) {
      bool found = false;
      for (const auto& p : poles) {
        if (p.shift == known.shift && p.multiplicity >= known.multiplicity) found = true;
      }
      if (!found) throw DomainError("incomplete pole list");
    }
  } else {
    auto [cofactor, rest] = detail::expand_linear_product(1, listed).divmod(f.den());
    if (!rest.is_zero()) throw DomainError("incomplete pole list");
    numerator = remainder * cofactor;
  }

  for (std::size_t idx = 0; idx < poles.size(); ++idx) {
    const Rational& c = poles[idx].shift;
    const long mult = poles[idx].multiplicity;
    const std::size_t length = static_cast<std::size_t>(mult);
    Series local;
    if (factored) {
      // (t+c)^M f(t) at t = -c + u, factor by factor.
      local = Series(length, Rational(0));
      local[0] = factored->constant;
      long own = mult;
      for (const auto& lf : factored->factors) {
        if (lf.shift == c) {
          own += lf.exponent;
          continue;
        }
        local = series_mul(local, linear_power_series(lf.shift - c, lf.exponent, length), length);
      }
      if (own < 0) throw DomainError("pole multiplicity below the true order");
      Series shifted(length, Rational(0));
      for (std::size_t r = 0; r + static_cast<std::size_t>(own) < length; ++r) shifted[r + own] = local[r];
      local = std::move(shifted);
    } else {
      local = numerator.taylor(-c, length);
      for (std::size_t other = 0; other < poles.size(); ++other) {
        if (other == idx) continue;
        local = series_mul(local,
                           linear_power_series(poles[other].shift - c, -poles[other].multiplicity, length),
                           length);
      }
    }
    for (long i = 1; i <= mult; ++i) out.add(c, i, local[static_cast<std::size_t>(mult - i)]);
  }
  return out;
}

inline PartialFractionDecomp partial_fractions(const RatFun& f) {
  if (!f.poles()) throw DomainError("pole list unknown; pass it explicitly");
  return partial_fractions(f, *f.poles());
}

/// Reassembly identity: poly part plus all terms equals f exactly.
inline bool reassembles_to(const PartialFractionDecomp& d, const RatFun& f) {
  return d.reassemble() == f;
}

/// Checks f(-t-n) = sign * f(t) on the factor list: the shift multiset is
/// invariant under c -> n - c and the collected sign is (-1)^sum(e).
inline bool reflection_symmetric(const RatFun& f, unsigned long n, int sign) {
  const auto& fac = f.factorization();
  if (!fac) throw DomainError("symmetry check needs a factored rational function");
  std::map<Rational, long> exps;
  long total = 0;
  for (const auto& lf : fac->factors) {
    exps[lf.shift] = lf.exponent;
    total += lf.exponent;
  }
  for (const auto& [shift, e] : exps) {
    auto it = exps.find(Rational(static_cast<long>(n)) - shift);
    if (it == exps.end() || it->second != e) return false;
  }
  const int collected = (total % 2 == 0) ? 1 : -1;
  return collected == sign;
}

/// The same symmetry as a polynomial identity num(-t-n) den(t) = sign num(t) den(-t-n).
inline bool reflection_symmetric_expanded(const RatFun& f, unsigned long n, int sign) {
  const Rational shift = -static_cast<long>(n);
  Poly lhs = f.num().compose_linear(-1, shift) * f.den();
  Poly rhs = Rational(sign) * (f.num() * f.den().compose_linear(-1, shift));
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// The rational functions of the construction.

/// A_n(t) = 2^{(6s+12)n} (4t+2n)^delta (t+1/4)_n^{s+2} (t+3/4)_n^{s+2} / (t)_{n+1}^{2s+4}.
inline RatFun build_A(unsigned long n, unsigned long s, unsigned delta) {
  if (n < 1) throw DomainError("build_A requires n >= 1");
  if (delta > 1) throw DomainError("delta must be 0 or 1");
  Factorization f;
  f.constant = Rational(pow2((6 * s + 12) * n + 2 * delta));
  const long up = static_cast<long>(s + 2);
  if (delta == 1) f.factors.push_back({make_rational(static_cast<long>(n), 2), 1});
  for (unsigned long j = 0; j < n; ++j) {
    f.factors.push_back({make_rational(4 * static_cast<long>(j) + 1, 4), up});
    f.factors.push_back({make_rational(4 * static_cast<long>(j) + 3, 4), up});
  }
  for (unsigned long l = 0; l <= n; ++l) f.factors.push_back({Rational(static_cast<long>(l)), -2 * up});
  RatFun a = RatFun::from_factors(f);
  if (a.degree() > -2) throw InvariantError("A_n has degree > -2");
  if (!reflection_symmetric(a, n, delta == 1 ? -1 : 1)) throw InvariantError("A_n(-t-n) != (-1)^delta A_n(t)");
  return a;
}

/// B_n(t) = 2^{(3s+6)n} (t+3/4)_n^{s+2} / (t)_{n+1}^{s+2}.
inline RatFun build_B(unsigned long n, unsigned long s) {
  if (n < 1) throw DomainError("build_B requires n >= 1");
  Factorization f;
  f.constant = Rational(pow2((3 * s + 6) * n));
  const long up = static_cast<long>(s + 2);
  for (unsigned long j = 0; j < n; ++j) f.factors.push_back({make_rational(4 * static_cast<long>(j) + 3, 4), up});
  for (unsigned long l = 0; l <= n; ++l) f.factors.push_back({Rational(static_cast<long>(l)), -up});
  RatFun b = RatFun::from_factors(f);
  if (b.degree() > -2) throw InvariantError("B_n has degree > -2");
  return b;
}

/// (-1)^i a_{n,i,n-k} = sign * a_{n,i,k} for every coefficient.
inline bool coefficient_symmetric(const PartialFractionDecomp& d, unsigned long n, int sign) {
  for (const auto& [key, a] : d.terms) {
    const Rational mirrored = d.coefficient(Rational(static_cast<long>(n)) - key.shift, key.order);
    const int parity = key.order % 2 == 0 ? 1 : -1;
    if (parity * mirrored != sign * a) return false;
  }
  return true;
}

/// Integrality of d_n^l (1/l!) F^{(l)}(-k) for F_{1/4}, F_{3/4} and (t+k) n!/(t)_{n+1},
/// all k in [0,n], l in [0, l_max].
inline Verdict lemma41_check(unsigned long n, unsigned long l_max) {
  const Integer d = lcm_upto(n);
  const std::size_t length = l_max + 1;
  const Rational f_scale = Rational(pow2(3 * n)) / Rational(factorial(n));
  auto fail = [&](const char* which, unsigned long k, std::size_t l, const Rational& value) {
    return make_verdict("lemma41", "d_n^l F^(l)(-k)/l! integral", false,
                        std::string(which) + " fails at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                            " l=" + std::to_string(l) + " value=" + to_string(value));
  };
  for (unsigned long k = 0; k <= n; ++k) {
    const Rational point = -static_cast<long>(k);
    Series f14(length, Rational(0)), f34(length, Rational(0)), g(length, Rational(0));
    f14[0] = f_scale;
    f34[0] = f_scale;
    g[0] = Rational(factorial(n));
    for (unsigned long j = 0; j < n; ++j) {
      f14 = series_mul(f14, linear_power_series(make_rational(4 * static_cast<long>(j) + 1, 4) + point, 1, length), length);
      f34 = series_mul(f34, linear_power_series(make_rational(4 * static_cast<long>(j) + 3, 4) + point, 1, length), length);
    }
    for (unsigned long l = 0; l <= n; ++l) {
      if (l == k) continue;
      g = series_mul(g, linear_power_series(Rational(static_cast<long>(l)) + point, -1, length), length);
    }
    Integer dpow = 1;
    for (std::size_t l = 0; l < length; ++l) {
      const Rational scale(dpow);
      const Rational a = f14[l] * scale, b = f34[l] * scale, c = g[l] * scale;
      if (a.get_den() != 1) return fail("F_1/4", k, l, a);
      if (b.get_den() != 1) return fail("F_3/4", k, l, b);
      if (c.get_den() != 1) return fail("(t+k)G", k, l, c);
      dpow *= d;
    }
  }
  return make_verdict("lemma41", "d_n^l F^(l)(-k)/l! integral", true,
                      "n=" + std::to_string(n) + " l<=" + std::to_string(l_max));
}

}  // namespace z2c
