#pragma once

#include <stdexcept>
#include <string>

namespace anth {

// Precondition violated by the caller (m <= n, zero quotient, mixed fields...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The engine safety valve tripped before termination or recurrence was seen.
// For valid inputs this is a defect, never a user error.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant broke (divisibility of a surd state, remainder order).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed certificate text. `where` is a byte offset or a JSON pointer.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::string where)
      : std::runtime_error(what + " at " + where), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// Well-formed certificate text whose values violate a type invariant.
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certificate object that cannot be checked at all (e.g. empty period).
class MalformedCertificate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace anth
