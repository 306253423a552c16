#pragma once

#include <stdexcept>
#include <string>

namespace advq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched register sizes, vector lengths or matrix shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds the dense test-scale guards (qubit caps).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Invalid user-supplied configuration. The CLI maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure during a run. The CLI maps this family to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// QITE normalisation radicand became non-positive; dt must shrink.
class StepSizeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Initial-state fit did not reach the acceptance threshold.
class FitFailure : public NumericalError {
 public:
  FitFailure(const std::string& what, double achieved)
      : NumericalError(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// No pool candidate lowers the McLachlan distance.
class StagnationError : public NumericalError {
 public:
  StagnationError(const std::string& what, double distance)
      : NumericalError(what), distance_(distance) {}
  double distance() const noexcept { return distance_; }

 private:
  double distance_;
};

}  // namespace advq
