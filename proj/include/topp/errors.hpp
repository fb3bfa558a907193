#pragma once

#include <stdexcept>
#include <string>

namespace topp {

/// Raised when a state leaves the nonnegative octant or a closed form has no
/// real value for the given parameters.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an operation is called outside the regime it is defined for
/// (e.g. asking for the second fixed point in the subcritical regime).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed JSON/CSV input or configuration.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace topp
