#pragma once

#include <stdexcept>
#include <string>

namespace fracns {

/// Raised when an operation is called outside its domain (bad exponent,
/// grid mismatch, nonzero mean where a singular multiplier is applied, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or unreadable snapshot / config input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracns
