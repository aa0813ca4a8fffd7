#pragma once

#include <stdexcept>
#include <string>

namespace weylchar {

/// An enumeration or series exceeded its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs violate an operation's precondition (length, shape, compatibility).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace weylchar
