#pragma once

#include <stdexcept>
#include <string>

namespace gapspec {

/// Argument outside the mathematical domain of a function (e.g. Bessel order a <= -1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent request (interval does not match kernel, n out of range).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iteration failed to converge or a computed quantity violates its invariant.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// log(1 - gamma*lambda) of a nonpositive factor: the determinant sits on or past a zero.
class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Some eigenvalue equals 1 to working precision, so lambda/(1-lambda) is undefined.
class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace gapspec
