#pragma once

#include <stdexcept>
#include <string>

namespace speccalc {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (e.g. a power on a negative eigenvalue).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid operation parameters (empty grids, non-increasing schedules, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A type invariant would be broken by the requested construction.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class NotMonotone : public Error {
 public:
  using Error::Error;
};

class NotUnbounded : public Error {
 public:
  using Error::Error;
};

/// A zero eigenvalue would be tensored against a truncated infinite model.
class ZeroAmbiguity : public Error {
 public:
  using Error::Error;
};

/// Rank-one calibration observed a decrease; the message carries the witness.
class NonMonotoneEvaluator : public Error {
 public:
  NonMonotoneEvaluator(const std::string& what, double lambda_lo, double lambda_hi,
                       double value_lo, double value_hi)
      : Error(what),
        lambda_lo(lambda_lo),
        lambda_hi(lambda_hi),
        value_lo(value_lo),
        value_hi(value_hi) {}

  double lambda_lo;
  double lambda_hi;
  double value_lo;
  double value_hi;
};

class DegenerateProfile : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

/// Counting requested beyond the last stored eigenvalue of a truncated model.
class GridBeyondTruncation : public Error {
 public:
  using Error::Error;
};

class PreorderNotEstablished : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON/CSV input; the message names the offending field or line.
class FormatError : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace speccalc
