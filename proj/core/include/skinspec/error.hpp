#pragma once

#include <stdexcept>
#include <string>

namespace skinspec {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: shape mismatches, empty inputs, out-of-range counts.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel exhausted its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The spectral parameter sits on a determinant curve (a root modulus equals
/// the circle radius within tolerance), so the winding number is undefined.
class BoundaryError : public Error {
 public:
  BoundaryError(const std::string& what, double guard)
      : Error(what), guard_(guard) {}

  double guard() const noexcept { return guard_; }

 private:
  double guard_;
};

/// prod(b) == 0 or prod(c) == 0: the z-quadratic degenerates.
class DegenerateSymbol : public Error {
 public:
  using Error::Error;
};

/// Numerical trouble that the theory rules out (inconsistent Jordan system,
/// argument unwrapping that never settles, vanishing pivots).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace skinspec
