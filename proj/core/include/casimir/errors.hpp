#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed files, invalid parameters, violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A tabulated model was asked for a frequency its extrapolation policy does not cover.
class ExtrapolationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A saturation variant was combined with a route or scope it cannot serve.
class IncompatibleScopeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical failure: a quadrature, sum or root search did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved = 0.0)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Optical table too sparse for the requested tolerance.
class AccuracyError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// Root count changed under grid refinement.
class RefinementError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// Fresnel denominator vanished.
class SingularCoefficientError : public Error {
 public:
  using Error::Error;
};

// Distribution function evaluated at its pole.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace casimir
