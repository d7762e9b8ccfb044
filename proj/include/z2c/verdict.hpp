#pragma once

#include <string>
#include <utility>
#include <vector>

namespace z2c {

enum class Status { pass, fail, not_applicable, inconclusive };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::not_applicable: return "not_applicable";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

/// One checked statement. `statement` is the mathematical claim in plain
/// notation, `detail` carries the witness or the first counterexample.
struct Verdict {
  std::string check;
  std::string statement;
  Status status = Status::pass;
  std::string detail;

  bool passed() const { return status == Status::pass || status == Status::not_applicable; }
};

inline bool all_passed(const std::vector<Verdict>& verdicts) {
  for (const auto& v : verdicts) {
    if (!v.passed()) return false;
  }
  return true;
}

inline Verdict make_verdict(std::string check, std::string statement, bool ok, std::string detail = {}) {
  return Verdict{std::move(check), std::move(statement), ok ? Status::pass : Status::fail,
                 std::move(detail)};
}

}  // namespace z2c
