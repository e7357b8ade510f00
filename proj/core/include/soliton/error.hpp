#pragma once

#include <stdexcept>
#include <string>

namespace soliton {

/// Raised when an argument violates an operation's precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Eigenvalues too close together for the spectrum to be well defined.
class DegenerateSpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Overflow, non-convergence or any other floating-point breakdown.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The sampled signal cannot support the requested T/B measurement
/// (boundary leakage, aliasing).
class MeasurementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace soliton
