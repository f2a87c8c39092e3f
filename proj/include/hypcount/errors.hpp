#pragma once

#include <stdexcept>
#include <string>

namespace hypcount {

/// Malformed expression, tuple or polynomial text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A base case the engine has no way to supply (e.g. genus-one values of
/// tuples that never occur below weight eight).
class UnsupportedBaseCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed the configured curve or point budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interpolated data failed to reproduce a held-out sample.
class InterpolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A fitted or derived result disagrees with the values it must reproduce.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hypcount
