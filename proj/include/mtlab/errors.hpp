#pragma once

#include <stdexcept>
#include <string>

namespace mtlab {

/// Base class for failures of a numerical procedure (as opposed to bad input,
/// which is reported with std::invalid_argument).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The adaptive integrator could not keep the local error below tolerance.
class StepSizeUnderflow : public NumericalError {
 public:
  StepSizeUnderflow(const std::string& what, double t_location)
      : NumericalError(what), t_(t_location) {}
  double location() const noexcept { return t_; }

 private:
  double t_;
};

class NonFiniteRhs : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The requested level was not crossed before the end of the range.
class NoCrossing : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A shot never reached the boundary event u = 0.
class EventNotReached : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace mtlab
