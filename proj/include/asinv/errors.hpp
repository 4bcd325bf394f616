#pragma once

#include <stdexcept>
#include <string>

namespace asinv {

// Malformed or inadmissible input (bad prime, p | d, syntax error, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value falls outside the admissible domain (vanishing denominator,
// degenerate parameter, fingerprint outside the image, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An explicit work budget was exhausted.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed; indicates a bug.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Syntax error carrying the offending byte offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : InputError(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace asinv
