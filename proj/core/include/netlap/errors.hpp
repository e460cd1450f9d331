#pragma once

#include <stdexcept>
#include <string>

namespace netlap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (shape, symmetry, range).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not produce a trustworthy result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Iterative routine exhausted its budget; carries the residual gap reached.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, int iterations, double gap)
      : NumericalError(what), iterations_(iterations), gap_(gap) {}

  int iterations() const noexcept { return iterations_; }
  double gap() const noexcept { return gap_; }

 private:
  int iterations_;
  double gap_;
};

}  // namespace netlap
