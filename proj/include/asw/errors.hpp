#pragma once

#include <stdexcept>
#include <string>

namespace asw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by an element that is zero at its current precision.
class DivisionByIndeterminateZero : public Error {
 public:
  using Error::Error;
};

/// All coefficients vanish to precision, so the valuation is only bounded below.
class IndeterminateValuation : public Error {
 public:
  using Error::Error;
};

/// A case the library deliberately does not decide.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Working precision ran out before a computation reached its target.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// A trace (or other K0-valued result) had a non-constant component.
class NotRational : public Error {
 public:
  using Error::Error;
};

/// A derived identity that must hold for the construction did not.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Input parameters violate one of the construction's inequalities.
class ValidationFailed : public Error {
 public:
  using Error::Error;
};

/// The freeness bound p^2 e0 - (p+1) b2 + (p-1) b1 > 0 does not hold.
class BoundNotSatisfied : public Error {
 public:
  using Error::Error;
};

/// Independent routes to the same verdict disagree.
class InternalDisagreement : public Error {
 public:
  using Error::Error;
};

}  // namespace asw
