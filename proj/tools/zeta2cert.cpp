// zeta2cert: exact 2-adic linear forms in Hurwitz zeta values, their
// valuations, and the verification suites around them.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or domain error,
// 3 precision exhausted.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "z2c/z2c.hpp"

namespace {

using namespace z2c;
using report::json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kPrecision = 3;

struct Options {
  std::string out = "json";
  std::string cache;
  std::uint64_t seed = 1;

  std::size_t max_index = 400;
  long j = 0;
  std::string x;
  std::optional<long> prec;
  std::optional<unsigned long> n;
  unsigned long s = 0;
  unsigned delta = 0;
  std::string kind = "S";
  unsigned m = 2;
  std::optional<unsigned> m_max;
  std::vector<unsigned> m_list{2, 3};
  std::string suite;
  std::optional<unsigned long> k;
  std::size_t samples = 200;
  std::uint64_t k_cap = 4096;
  unsigned long l_max = 4;
  long den = 1000;
  unsigned levels = 12;
};

void print_flat(const json& j, bool csv) {
  for (const auto& [key, value] : j.items()) {
    const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    if (csv) {
      std::cout << report::csv_field(key) << ',' << report::csv_field(text) << '\n';
    } else {
      std::cout << key << ": " << text << '\n';
    }
  }
}

void emit(const Options& opt, const json& j, const std::vector<Verdict>* verdicts = nullptr) {
  if (opt.out == "json") {
    std::cout << j.dump(2) << '\n';
  } else if (verdicts) {
    if (opt.out == "csv") {
      report::write_csv(std::cout, *verdicts);
    } else {
      report::write_text(std::cout, *verdicts);
    }
  } else {
    print_flat(j, opt.out == "csv");
  }
}

bool verdicts_strictly_pass(const std::vector<Verdict>& vs) {
  for (const auto& v : vs) {
    if (v.status == Status::fail || v.status == Status::inconclusive) return false;
  }
  return true;
}

int finish_verdicts(const Options& opt, json j, const std::vector<Verdict>& vs) {
  const bool ok = verdicts_strictly_pass(vs);
  j["verdicts"] = report::to_json(vs);
  j["passed"] = ok;
  emit(opt, j, &vs);
  return ok ? kOk : kCheckFailed;
}

void append(std::vector<Verdict>& into, const std::vector<Verdict>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

int cmd_bernoulli(const Options& opt, const std::string& path) {
  const std::size_t before = bernoulli_cache().size();
  bernoulli_cache().ensure(opt.max_index);
  const std::size_t after = bernoulli_cache().size();
  if (after > before) save_bernoulli_cache(path);
  emit(opt, json{{"entries", after},
                 {"max_index", after - 1},
                 {"computed", after - before},
                 {"cache", path}});
  return kOk;
}

int cmd_zeta(const Options& opt) {
  const long A = opt.prec.value_or(64);
  if (A < 1) throw DomainError("precision must be positive");
  ZetaValue z = opt.x.empty() ? zeta2_at(opt.j, A) : hurwitz_zeta2(opt.j, parse_rational(opt.x), A);
  z.abs_precision = A;
  emit(opt, report::to_json(z));
  return kOk;
}

int cmd_linform(const Options& opt) {
  if (!opt.n) throw DomainError("--n is required");
  const LinearFormReport r = analyze_form(parse_kind(opt.kind), *opt.n, opt.s, opt.delta, opt.prec);
  std::vector<Verdict> all = r.verdicts;
  append(all, r.integrality_verdicts);
  emit(opt, report::to_json(r), &all);
  return verdicts_strictly_pass(all) ? kOk : kCheckFailed;
}

int cmd_certificate(const Options& opt) {
  const CertificateReport r = certificate(opt.s, opt.delta, opt.m_list, parse_kind(opt.kind));
  std::vector<Verdict> all = r.verdicts;
  for (const auto& row : r.rows) append(all, row.verdicts);
  emit(opt, report::to_json(r), &all);
  return r.passed() ? kOk : kCheckFailed;
}

std::vector<Verdict> suite_symmetry(const Options& opt) {
  const unsigned long n = opt.n.value_or(3);
  const int sign = opt.delta == 1 ? -1 : 1;
  const RatFun a = build_A(n, opt.s, opt.delta);
  const std::string where = "n=" + std::to_string(n) + " s=" + std::to_string(opt.s) +
                            " delta=" + std::to_string(opt.delta);
  std::vector<Verdict> out;
  out.push_back(make_verdict("symmetry_factors", "A_n(-t-n) = (-1)^delta A_n(t) on the factor list",
                             reflection_symmetric(a, n, sign), where));
  out.push_back(make_verdict("symmetry_expanded", "A_n(-t-n) = (-1)^delta A_n(t) as a polynomial identity",
                             reflection_symmetric_expanded(a, n, sign), where));
  const LinearFormCoefficients rho = rho_coeffs(n, opt.s, opt.delta);
  out.push_back(make_verdict("symmetry_coefficients", "(-1)^i a_{n,i,n-k} = (-1)^delta a_{n,i,k}",
                             coefficient_symmetric(rho.decomp, n, sign), where));
  bool parity = rho.c[1] == 0;
  for (unsigned long i = 2; i < rho.c.size(); ++i) {
    if (i % 2 != opt.delta % 2) parity = parity && rho.c[i] == 0;
  }
  out.push_back(make_verdict("parity_vanishing", "rho_1 = 0 and rho_i = 0 for i != delta mod 2", parity, where));
  out.push_back(make_verdict("degree", "deg A_n <= -2 and deg B_n <= -2",
                             a.degree() <= -2 && build_B(n, opt.s).degree() <= -2, where));
  return out;
}

std::vector<Verdict> suite_reflection(const Options& opt) {
  const long A = opt.prec.value_or(128);
  std::vector<long> js;
  if (opt.j != 0) {
    js.push_back(opt.j);
  } else {
    for (long j = 2; j <= 12; ++j) js.push_back(j);
  }
  std::vector<Rational> xs;
  if (!opt.x.empty()) {
    xs.push_back(parse_rational(opt.x));
  } else {
    xs = {Rational(1, 4), Rational(3, 4), Rational(-1, 4)};
  }
  std::vector<Verdict> out;
  for (long j : js) {
    for (const auto& x : xs) out.push_back(reflection_check(j, x, A));
  }
  return out;
}

std::vector<Verdict> suite_translation(const Options& opt) {
  const long A = opt.prec.value_or(40);
  const Rational x = opt.x.empty() ? Rational(1, 4) : parse_rational(opt.x);
  std::vector<Verdict> out;
  const long j_lo = opt.j != 0 ? opt.j : 1, j_hi = opt.j != 0 ? opt.j : 4;
  const unsigned long k_lo = opt.k.value_or(1), k_hi = opt.k.value_or(4);
  for (long j = j_lo; j <= j_hi; ++j) {
    for (unsigned long k = k_lo; k <= k_hi; ++k) {
      out.push_back(translate_check(Integrand::inverse_power(x, j), k, A));
    }
  }
  out.push_back(translate_check(Integrand::polynomial(Poly::monomial(1, 2)), 3, A));
  return out;
}

std::vector<Verdict> suite_delta_probe(const Options& opt) {
  std::vector<Verdict> out;
  auto binom6 = [](std::uint64_t k) -> Rational { return Rational(binomial(k, 6)); };
  auto square = [&](std::uint64_t k) -> Rational {
    Rational b = binom6(k);
    return b * b;
  };
  auto integer_poly = [](std::uint64_t k) -> Rational {
    const Rational t(static_cast<unsigned long>(k));
    return t * t * t + 2 * t + 5;
  };
  const unsigned m = opt.m;
  auto record = [&](const char* name, const char* statement, std::optional<long> probe, long bound, unsigned level) {
    const bool ok = !probe || *probe >= bound;
    out.push_back(make_verdict(name, statement, ok,
                               "m=" + std::to_string(level) + " probe=" +
                                   (probe ? std::to_string(*probe) : std::string("none")) +
                                   " bound=" + std::to_string(bound)));
  };
  record("delta_binomial", "Delta_m(C(t, 6)) >= -floor(log2 6)",
         delta_probe(binom6, m, opt.samples, opt.k_cap, opt.seed), -2, m);
  record("delta_integer_poly", "Delta_m(f) >= 0 for integer power series f",
         delta_probe(integer_poly, m, opt.samples, opt.k_cap, opt.seed), 0, m);
  const unsigned m_sq = std::max(m, 3U);
  record("delta_square", "Delta_m(C(t, 6)^2) >= -floor(log2 6) + 1 for m > floor(log2 6)",
         delta_probe(square, m_sq, opt.samples, opt.k_cap, opt.seed), -1, m_sq);
  return out;
}

int cmd_verify(const Options& opt) {
  const std::string& suite = opt.suite;
  json j{{"suite", suite}};
  std::vector<Verdict> vs;
  if (suite == "integrality") {
    vs = integrality_report(opt.n.value_or(15), opt.s, opt.delta);
  } else if (suite == "valuation") {
    const LinearFormReport r = valuation_check(opt.m, opt.s, opt.delta, parse_kind(opt.kind));
    vs = r.verdicts;
    append(vs, r.integrality_verdicts);
    j["report"] = report::to_json(r);
  } else if (suite == "symmetry") {
    vs = suite_symmetry(opt);
  } else if (suite == "lemma51") {
    vs.push_back(lemma51_check(opt.m_max.value_or(12)));
  } else if (suite == "kummer") {
    vs.push_back(kummer_parity_check(opt.m_max.value_or(10)));
  } else if (suite == "floor") {
    vs.push_back(floor_inequality_sweep(opt.den));
  } else if (suite == "reflection") {
    vs = suite_reflection(opt);
  } else if (suite == "translation") {
    vs = suite_translation(opt);
  } else if (suite == "decomposition") {
    const DecompositionReport r = leibniz_decomposition(opt.m, opt.s, opt.delta);
    vs = r.verdicts;
    j["report"] = report::to_json(r);
  } else if (suite == "growth") {
    const GrowthReport r = growth_check(opt.n.value_or(100000));
    vs = r.verdicts;
    j["log_d_over_n"] = report::fixed(r.log_d_over_n);
    j["log_phi_over_n"] = report::fixed(r.log_phi_over_n);
  } else if (suite == "delta-probe") {
    vs = suite_delta_probe(opt);
  } else if (suite == "lemma41") {
    vs.push_back(lemma41_check(opt.n.value_or(7), opt.l_max));
  } else if (suite == "bounds") {
    vs = archimedean_bound_check(opt.n.value_or(3), opt.s, opt.delta);
  } else if (suite == "direct") {
    vs.push_back(low_precision_direct_check(parse_kind(opt.kind), opt.n.value_or(1), opt.s, opt.delta, opt.levels));
  } else {
    throw DomainError("unknown suite '" + suite + "'");
  }
  return finish_verdicts(opt, j, vs);
}

void validate(const Options& opt) {
  if (opt.delta > 1) throw DomainError("--delta must be 0 or 1");
  if (opt.m < 2) throw DomainError("--m must be >= 2");
  for (unsigned m : opt.m_list) {
    if (m < 2) throw DomainError("every entry of --m-list must be >= 2");
  }
  if (opt.n && *opt.n < 1) throw DomainError("--n must be >= 1");
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"zeta2cert: exact 2-adic linear forms in Hurwitz zeta values"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", opt.out, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--cache", opt.cache, "Bernoulli cache file (default: $Z2C_BERNOULLI_CACHE)");
  app.add_option("--seed", opt.seed, "Seed for sampled probes");

  auto* bern = app.add_subcommand("bernoulli", "Extend and persist the Bernoulli cache");
  bern->add_option("--max", opt.max_index, "Highest index to hold");

  auto* zeta = app.add_subcommand("zeta", "Hurwitz zeta value zeta_2(j, x), or zeta_2(j) without --x");
  zeta->add_option("--j", opt.j, "Argument j")->required();
  zeta->add_option("--x", opt.x, "Shift x with v_2(x) <= -2");
  zeta->add_option("--prec", opt.prec, "Bits of absolute precision");

  auto* linform = app.add_subcommand("linform", "Coefficients, value and valuation of S_n or T_n");
  linform->add_option("--n", opt.n)->required();
  linform->add_option("--s", opt.s);
  linform->add_option("--delta", opt.delta);
  linform->add_option("--kind", opt.kind);
  linform->add_option("--prec", opt.prec, "Fix the working precision");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", opt.suite)
      ->required()
      ->check(CLI::IsMember({"integrality", "valuation", "symmetry", "lemma51", "kummer", "floor", "reflection",
                             "translation", "decomposition", "growth", "delta-probe", "lemma41", "bounds",
                             "direct"}));
  verify->add_option("--n", opt.n);
  verify->add_option("--s", opt.s);
  verify->add_option("--delta", opt.delta);
  verify->add_option("--kind", opt.kind);
  verify->add_option("--m", opt.m);
  verify->add_option("--m-max", opt.m_max);
  verify->add_option("--j", opt.j);
  verify->add_option("--x", opt.x);
  verify->add_option("--k", opt.k);
  verify->add_option("--prec", opt.prec);
  verify->add_option("--samples", opt.samples);
  verify->add_option("--k-cap", opt.k_cap);
  verify->add_option("--l-max", opt.l_max);
  verify->add_option("--den", opt.den);
  verify->add_option("--levels", opt.levels, "Direct-sum levels M_max");

  auto* cert = app.add_subcommand("certificate", "Decay certificate over n = 2^m - 1");
  cert->add_option("--s", opt.s);
  cert->add_option("--delta", opt.delta);
  cert->add_option("--m-list", opt.m_list)->delimiter(',');
  cert->add_option("--kind", opt.kind);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::string cache_path = opt.cache;
  if (cache_path.empty()) {
    if (const char* env = std::getenv("Z2C_BERNOULLI_CACHE")) cache_path = env;
  }

  try {
    validate(opt);
    if (!cache_path.empty()) load_bernoulli_cache(cache_path);
    if (bern->parsed()) return cmd_bernoulli(opt, cache_path.empty() ? "bernoulli.cache" : cache_path);
    int code = kOk;
    if (zeta->parsed()) code = cmd_zeta(opt);
    if (linform->parsed()) code = cmd_linform(opt);
    if (verify->parsed()) code = cmd_verify(opt);
    if (cert->parsed()) code = cmd_certificate(opt);
    return code;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PrecisionError& e) {
    std::cerr << "precision exhausted: " << e.what() << '\n';
    return kPrecision;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}
