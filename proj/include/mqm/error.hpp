#pragma once

#include <stdexcept>
#include <string>

namespace mqm {

/// A violated precondition. The message names the offending parameter.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base class for numerical failures (non-convergence, empty brackets).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A series or iteration hit its cap before meeting the stopping rule.
class NonConvergence : public NumericalError {
 public:
  NonConvergence(const std::string& what, double partial, int iterations)
      : NumericalError(what), partial_(partial), iterations_(iterations) {}

  double partial() const noexcept { return partial_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double partial_;
  int iterations_;
};

/// A root bracket held fewer sign changes than the requested root index.
class BracketTooSmall : public NumericalError {
 public:
  BracketTooSmall(const std::string& what, int found)
      : NumericalError(what), found_(found) {}

  int sign_changes() const noexcept { return found_; }

 private:
  int found_;
};

}  // namespace mqm
