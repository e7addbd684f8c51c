#pragma once

#include <stdexcept>
#include <string>

namespace weil {

/// A caller broke a precondition (mismatched generator sets, bad index lists, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element, image or generator has the wrong degree for its role.
class DegreeMismatch : public UsageError {
 public:
  using UsageError::UsageError;
};

class NotACocycle : public UsageError {
 public:
  using UsageError::UsageError;
};

class OddCodimension : public UsageError {
 public:
  using UsageError::UsageError;
};

/// A requested generator (e.g. y_{2r}) does not exist in the algebra.
class IndexOutOfRange : public UsageError {
 public:
  using UsageError::UsageError;
};

/// The requested complex exceeds the configured dimension budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; this is a bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace weil
