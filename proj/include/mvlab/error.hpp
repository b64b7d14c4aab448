#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvlab {

/// Argument outside the mathematical domain of an operation (n beyond a table
/// limit, x < 2, malformed prime modulus, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request would exceed the configured sieve/memory budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A hypothesis required by an operation does not hold for its input
/// (e.g. a non-negative function was required).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The greedy prime-subsequence construction could not start or proceed.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace mvlab
