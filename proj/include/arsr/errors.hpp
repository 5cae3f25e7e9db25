#pragma once

#include <stdexcept>
#include <string>

namespace arsr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched vector/matrix sizes.
struct DimensionError : Error {
  using Error::Error;
};

// Out-of-range scalar argument (negative sigma, tau outside (0,1), ...).
struct ParameterError : Error {
  using Error::Error;
};

// A measurement-bound formula was evaluated outside its validity region
// (s + xi/2 <= 0 or >= n). Carries the offending effective sparsity so the
// caller can decide on a fallback.
struct DegenerateBoundError : Error {
  double value;
  DegenerateBoundError(const std::string& msg, double v) : Error(msg), value(v) {}
};

// A theorem assumption does not hold for the given inputs.
struct AssumptionError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace arsr
