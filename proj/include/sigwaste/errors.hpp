#pragma once

#include <stdexcept>

namespace sigw {

// Numerical failures raised by the solvers. The CLI maps these to exit code 1,
// and configuration problems (ConfigError) to exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureError : NumericalError {
  using NumericalError::NumericalError;
};

struct InversionError : NumericalError {
  using NumericalError::NumericalError;
};

struct SingularityError : NumericalError {
  using NumericalError::NumericalError;
};

struct RatioConditionError : NumericalError {
  using NumericalError::NumericalError;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sigw
