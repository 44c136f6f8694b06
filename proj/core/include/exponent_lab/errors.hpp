#pragma once

#include <stdexcept>
#include <string>

namespace exponent_lab {

// Raised when a computation cannot certify its result at the working
// precision. Callers escalate precision or give up (CLI exit code 3).
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument sits within the working precision of a zero of sin.
class NearSingularity : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

// stabilize() ran out of precision doublings.
class NonConvergence : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

// Requested precision is below the supported minimum (64 bits).
class UnsupportedPrecision : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bad constant identifiers, indices or ranges supplied by the caller.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace exponent_lab
