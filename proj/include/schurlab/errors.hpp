#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schurlab {

/// Argument outside the mathematical domain of an operation (k = 0, empty set where a
/// density is needed, gcd precondition broken, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Query outside the range covered by a precomputed table.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Request exceeds a configured memory budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is valid but too small for the construction to produce anything (N' = 0 and friends).
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Search stopped at its node budget without deciding the question.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A post-condition that must hold by construction failed its recount.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Neither outcome of the increment dichotomy could be certified for this input.
class CertificateFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace schurlab
