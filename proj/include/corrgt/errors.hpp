#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corrgt {

/// Raised when inputs violate a documented precondition or invariant.
/// The message names the violated constraint.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The exact enumeration oracle refuses graphs above its edge budget.
class BudgetError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A series or closed form requested outside the range where it is defined.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Randomized construction failed after its retry budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure inside one Monte Carlo trial; carries the trial index.
class TrialError : public std::runtime_error {
 public:
  TrialError(std::size_t trial, const std::string& what)
      : std::runtime_error("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}

  std::size_t trial() const noexcept { return trial_; }

 private:
  std::size_t trial_;
};

inline void require(bool condition, const std::string& constraint) {
  if (!condition) throw ValidationError(constraint);
}

inline void require_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0))
    throw ValidationError(std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
}

}  // namespace corrgt
