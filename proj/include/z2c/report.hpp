#pragma once

// JSON, CSV and text rendering of results. Integers wider than 64 bits and
// all non-integral rationals are emitted as decimal strings.

#include <nlohmann/json.hpp>

#include <cstdio>
#include <ostream>

#include "z2c/linforms.hpp"

namespace z2c::report {

using nlohmann::json;

inline json number(const Integer& x) {
  if (mpz_fits_slong_p(x.get_mpz_t())) return json(x.get_si());
  return json(x.get_str());
}

inline json number(const Rational& x) {
  if (x.get_den() == 1) return number(x.get_num());
  return json(to_string(x));
}

inline std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

inline json to_json(const Valuation2Result& v) {
  switch (v.kind) {
    case Valuation2Result::Kind::exact: return json{{"kind", "exact"}, {"value", v.value}};
    case Valuation2Result::Kind::below_precision: return json{{"kind", "below_precision"}, {"bound", v.value}};
    case Valuation2Result::Kind::exact_zero: return json{{"kind", "exact_zero"}};
  }
  return {};
}

inline json to_json(const Verdict& v) {
  return json{{"check", v.check}, {"statement", v.statement}, {"status", status_name(v.status)}, {"detail", v.detail}};
}

inline json to_json(const std::vector<Verdict>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(to_json(v));
  return arr;
}

inline json to_json(const ZetaValue& z) {
  auto [residue, e] = canonical_form(z.value, z.abs_precision);
  return json{{"j", z.j},
              {"x", z.x == 0 ? json(nullptr) : json(to_string(z.x))},
              {"abs_precision", z.abs_precision},
              {"scaling_exponent", e},
              {"residue_hex", residue.get_str(16)},
              {"valuation", to_json(z.value.valuation())}};
}

inline json to_json(const LinearFormReport& r) {
  json coeffs = json::array(), scaled = json::array();
  for (const auto& c : r.coefficients.c) coeffs.push_back(number(c));
  for (const auto& c : r.scaled_coefficients) scaled.push_back(number(c));
  json out{{"kind", kind_name(r.coefficients.kind)},
           {"n", r.coefficients.n},
           {"s", r.coefficients.s},
           {"delta", r.coefficients.delta},
           {"coefficients", coeffs},
           {"scaled_coefficients", scaled},
           {"precision", r.precision},
           {"valuation", to_json(r.valuation)},
           {"route_agreement", r.route_agreement},
           {"certificate_quantity_log2", fixed(log2_abs(r.certificate_quantity))},
           {"verdicts", to_json(r.verdicts)},
           {"integrality_verdicts", to_json(r.integrality_verdicts)}};
  out["predicted_valuation"] = r.predicted_valuation ? json(*r.predicted_valuation) : json(nullptr);
  return out;
}

inline json to_json(const DecompositionReport& r) {
  json terms = json::array();
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    terms.push_back(json{{"index", r.terms[i].index},
                         {"valuation", to_json(r.terms[i].valuation)},
                         {"special", i == r.special}});
  }
  return json{{"m", r.m},         {"n", r.n},
              {"s", r.s},         {"delta", r.delta},
              {"precision", r.precision}, {"predicted_special_valuation", r.predicted_special},
              {"terms", terms},   {"verdicts", to_json(r.verdicts)}};
}

inline json to_json(const CertificateReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json coeffs = json::array();
    for (const auto& c : row.scaled_coefficients) coeffs.push_back(c.get_str());
    json verdicts = json::object();
    for (const auto& v : row.verdicts) verdicts[v.check] = json{{"status", status_name(v.status)}, {"detail", v.detail}};
    rows.push_back(json{{"m", row.m},
                        {"n", row.n},
                        {"scaled_coefficients", coeffs},
                        {"form_valuation", row.form_valuation},
                        {"predicted_valuation", row.predicted_valuation},
                        {"mu_log2", fixed(row.mu_log2)},
                        {"verdicts", verdicts}});
  }
  json overall = json::object();
  for (const auto& v : r.verdicts) overall[v.check] = json{{"status", status_name(v.status)}, {"detail", v.detail}};
  return json{{"kind", kind_name(r.kind)}, {"s", r.s},
              {"delta", r.delta},          {"rows", rows},
              {"zeta_window", r.zeta_window}, {"verdicts", overall},
              {"conclusion", r.conclusion}};
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv(std::ostream& out, const std::vector<Verdict>& vs) {
  out << "check,status,statement,detail\n";
  for (const auto& v : vs) {
    out << csv_field(v.check) << ',' << status_name(v.status) << ',' << csv_field(v.statement) << ','
        << csv_field(v.detail) << '\n';
  }
}

inline void write_text(std::ostream& out, const std::vector<Verdict>& vs) {
  for (const auto& v : vs) {
    out << status_name(v.status) << "  " << v.check << "  " << v.statement;
    if (!v.detail.empty()) out << "  [" << v.detail << "]";
    out << '\n';
  }
}

}  // namespace z2c::report
