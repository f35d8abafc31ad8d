#pragma once

#include <stdexcept>
#include <string>

namespace laxlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid size below 2, mismatched grids, or a stencil wider than the grid.
class InvalidGridError : public Error {
 public:
  using Error::Error;
};

/// A sample that should be finite is NaN or infinite.
class DivergedValueError : public Error {
 public:
  using Error::Error;
};

/// Operator coefficients grew past the overflow threshold.
class DivergedOperatorError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the operation's domain (e.g. t <= T for extend_evolve).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Probe rejected: zero where a nonzero vector is required, or not band-limited.
class InvalidProbeError : public Error {
 public:
  using Error::Error;
};

/// Scan range too short to certify a supremum.
class InsufficientScanError : public Error {
 public:
  using Error::Error;
};

/// Numerical self-check failed (solver residual too large).
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unknown configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace laxlab
