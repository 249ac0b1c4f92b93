#pragma once

#include <stdexcept>
#include <string>

namespace qromlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Register or matrix shapes that do not line up. The message names the
/// registers/systems involved.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A mathematical guarantee failed numerically (e.g. no Alon fixing exists).
/// Usually means a threshold is miscalibrated or a precondition was violated.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input too large for exhaustive evaluation.
class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace qromlab
