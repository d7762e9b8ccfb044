#pragma once

// Integer and rational combinatorics: valuations, factorials, lcm(1..n),
// the prime product Phi_n, binomials and a persistent Bernoulli cache.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "z2c/errors.hpp"

namespace z2c {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "a", "-a" or "a/b" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw DomainError("not a rational number: '" + s + "'");
  }
}

inline std::string to_string(const Integer& x) { return x.get_str(); }

inline std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Integer pow2(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational rpow(const Rational& base, long e) {
  Integer num = ipow(base.get_num(), static_cast<unsigned long>(e < 0 ? -e : e));
  Integer den = ipow(base.get_den(), static_cast<unsigned long>(e < 0 ? -e : e));
  if (e < 0) {
    if (num == 0) throw DomainError("zero to a negative power");
    return make_rational(den, num);
  }
  Rational r(num, den);  // already reduced: powers of coprime parts
  return r;
}

inline Integer factorial(unsigned long a) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), a);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// C(a, i) for any integer a, including negative a.
inline Integer binomial_general(const Integer& a, unsigned long i) {
  Integer r;
  mpz_bin_ui(r.get_mpz_t(), a.get_mpz_t(), i);
  return r;
}

/// Valuation of a nonzero integer at the prime q.
inline long vp(unsigned long q, const Integer& x) {
  if (x == 0) throw DomainError("valuation of zero");
  if (q == 2) return static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
  Integer rest;
  Integer prime(q);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

inline long vp(unsigned long q, const Rational& x) {
  if (x == 0) throw DomainError("valuation of zero");
  return vp(q, x.get_num()) - vp(q, x.get_den());
}

/// Legendre: v_q(a!) = sum_{e>=1} floor(a / q^e).
inline long vq_factorial(unsigned long q, std::uint64_t a) {
  long total = 0;
  while (a > 0) {
    a /= q;
    total += static_cast<long>(a);
  }
  return total;
}

inline int sod2(std::uint64_t a) { return __builtin_popcountll(a); }

/// k with its leading base-q digit removed.
inline std::uint64_t k_minus(std::uint64_t k, std::uint64_t q) {
  if (k == 0) throw DomainError("k_minus requires k >= 1");
  std::uint64_t top = 1;
  while (top <= k / q) top *= q;
  return k % top;
}

struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;  // exactly the primes <= limit, ascending
};

inline PrimeTable sieve(std::uint64_t limit) {
  PrimeTable table{limit, {}};
  if (limit < 2) return table;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    table.primes.push_back(p);
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return table;
}

/// Shared sieve; grows on demand. The returned table may extend past `limit`.
inline std::shared_ptr<const PrimeTable> prime_table(std::uint64_t limit) {
  static std::mutex mutex;
  static std::shared_ptr<const PrimeTable> cached = std::make_shared<PrimeTable>(sieve(1024));
  std::lock_guard<std::mutex> lock(mutex);
  if (cached->limit < limit) {
    cached = std::make_shared<PrimeTable>(sieve(std::max(limit, 2 * cached->limit)));
  }
  return cached;
}

/// d_n = lcm(1, ..., n).
inline Integer lcm_upto(std::uint64_t n) {
  if (n == 0) throw DomainError("lcm_upto requires n >= 1");
  auto table = prime_table(n);
  Integer result = 1;
  for (std::uint64_t q : table->primes) {
    if (q > n) break;
    std::uint64_t power = q;
    while (power <= n / q) power *= q;
    result *= Integer(static_cast<unsigned long>(power));
  }
  return result;
}

/// Product of primes q with sqrt(10n) < q <= n and frac(n/q) > 1/2.
/// The square-root comparison is done as q^2 > 10n in integers.
inline Integer phi_factor(std::uint64_t n) {
  if (n == 0) throw DomainError("phi_factor requires n >= 1");
  auto table = prime_table(n);
  Integer result = 1;
  for (std::uint64_t q : table->primes) {
    if (q > n) break;
    if (q * q <= 10 * n) continue;
    if (2 * (n % q) > q) result *= Integer(static_cast<unsigned long>(q));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Bernoulli numbers, B_1 = -1/2 convention.
//
// This is the convention under which the Volkenborn integral of t^i equals
// B_i; the B_1 = +1/2 convention silently breaks every zeta value.

/// prod of primes p with (p - 1) | i, the denominator of B_i for even i >= 2.
inline Integer staudt_denominator(std::size_t i) {
  Integer den = 1;
  auto table = prime_table(i + 1);
  for (std::uint64_t p : table->primes) {
    if (p > i + 1) break;
    if (i % (p - 1) == 0) den *= Integer(static_cast<unsigned long>(p));
  }
  return den;
}

class BernoulliCache {
 public:
  BernoulliCache() { values_ = {Rational(1), Rational(-1, 2)}; }

  /// B_i, extending the table by the recurrence sum_{j<=i} C(i+1,j) B_j = 0.
  Rational get(std::size_t i) {
    std::lock_guard<std::mutex> lock(mutex_);
    extend_locked(i);
    return values_[i];
  }

  void ensure(std::size_t i) {
    std::lock_guard<std::mutex> lock(mutex_);
    extend_locked(i);
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return values_.size();
  }

  std::size_t highest_index() const { return size() - 1; }

  /// Replaces the table by the records in `in`; all-or-nothing.
  void load(std::istream& in) {
    std::vector<Rational> loaded = parse(in);
    std::lock_guard<std::mutex> lock(mutex_);
    if (loaded.size() > values_.size()) values_ = std::move(loaded);
  }

  void save(std::ostream& out) const {
    std::lock_guard<std::mutex> lock(mutex_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
      out << i << '\t' << values_[i].get_num().get_str() << '/' << values_[i].get_den().get_str()
          << '\n';
    }
  }

  /// Parses and validates cache records. Throws FormatError naming the line.
  static std::vector<Rational> parse(std::istream& in) {
    std::vector<Rational> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos) throw FormatError("missing tab separator", line_no);
      std::size_t index = 0;
      try {
        std::size_t used = 0;
        index = std::stoul(line.substr(0, tab), &used);
        if (used != tab) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw FormatError("bad index field", line_no);
      }
      if (index != values.size()) {
        throw FormatError("expected index " + std::to_string(values.size()), line_no);
      }
      std::string frac = line.substr(tab + 1);
      auto slash = frac.find('/');
      if (slash == std::string::npos) throw FormatError("value is not num/den", line_no);
      Integer num, den;
      if (num.set_str(frac.substr(0, slash), 10) != 0 || den.set_str(frac.substr(slash + 1), 10) != 0) {
        throw FormatError("unparsable integer", line_no);
      }
      if (den <= 0) throw FormatError("denominator must be positive", line_no);
      Rational value(num, den);
      Rational reduced = value;
      reduced.canonicalize();
      if (reduced.get_num() != num || reduced.get_den() != den) {
        throw FormatError("value not in lowest terms", line_no);
      }
      if (index == 0 && value != 1) throw FormatError("B_0 must be 1", line_no);
      if (index == 1 && value != Rational(-1, 2)) throw FormatError("B_1 must be -1/2", line_no);
      if (index >= 3 && index % 2 == 1 && value != 0) {
        throw FormatError("odd-index Bernoulli number must vanish", line_no);
      }
      if (value != 0 && vp(2, value) < -1) {
        throw FormatError("2-adic valuation below -1", line_no);
      }
      if (index >= 2 && index % 2 == 0 && den != staudt_denominator(index)) {
        throw FormatError("denominator differs from von Staudt-Clausen", line_no);
      }
      values.push_back(value);
    }
    return values;
  }

 private:
  void extend_locked(std::size_t i) {
    while (values_.size() <= i) {
      const std::size_t next = values_.size();
      if (next % 2 == 1) {
        values_.emplace_back(0);
        continue;
      }
      // B_next = -1/(next+1) * sum_{j<next} C(next+1, j) B_j; odd j >= 3 vanish.
      Rational acc = 0;
      for (std::size_t j = 0; j < next; ++j) {
        if (j >= 3 && j % 2 == 1) continue;
        acc += Rational(binomial(next + 1, j)) * values_[j];
      }
      Rational value = -acc / Rational(static_cast<unsigned long>(next + 1));
      values_.push_back(value);
    }
  }

  mutable std::mutex mutex_;
  std::vector<Rational> values_;
};

inline BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

inline Rational bernoulli(std::size_t i) { return bernoulli_cache().get(i); }

inline void load_bernoulli_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) return;
  bernoulli_cache().load(in);
}

inline void save_bernoulli_cache(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write Bernoulli cache to " + path);
  bernoulli_cache().save(out);
}

/// Magnitude comparison |a| < |b| on exact rationals.
inline bool abs_less(const Rational& a, const Rational& b) { return abs(a) < abs(b); }

/// log2|x| as a double, for diagnostics only.
inline double log2_abs(const Integer& x) {
  if (x == 0) throw DomainError("log of zero");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log2(std::abs(mant)) + static_cast<double>(exp);
}

inline double log2_abs(const Rational& x) { return log2_abs(x.get_num()) - log2_abs(x.get_den()); }

}  // namespace z2c
