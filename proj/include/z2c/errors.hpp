#pragma once

#include <stdexcept>
#include <string>

namespace z2c {

/// Argument outside the mathematical domain of an operation (bad j, x, n, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A 2-adic quantity was not known to enough bits to answer the question asked.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed persisted data (Bernoulli cache, golden files).
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An internal postcondition failed; indicates a construction bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace z2c
