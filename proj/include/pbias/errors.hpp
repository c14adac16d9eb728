#pragma once

#include <stdexcept>
#include <string>

namespace pbias {

// Raised for invalid family parameters, substitutions or monomials.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an operation is applied outside its mathematical domain
// (non-unit constant terms, divergent products, reading past truncation).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised by the oracle when a request exceeds a configured cap.
class CapExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Two independent evaluation tiers produced different values.
class TierDisagreement : public std::runtime_error {
 public:
  TierDisagreement(std::string what, int n)
      : std::runtime_error(std::move(what)), n_(n) {}
  int n() const noexcept { return n_; }

 private:
  int n_;
};

}  // namespace pbias
