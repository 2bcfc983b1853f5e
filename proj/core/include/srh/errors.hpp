#pragma once

#include <stdexcept>
#include <string>

namespace srh {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature hit its subdivision limit before meeting tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double residual)
      : std::runtime_error(what), estimate_(estimate), residual_(residual) {}

  double estimate() const noexcept { return estimate_; }
  double residual() const noexcept { return residual_; }

 private:
  double estimate_;
  double residual_;
};

/// The periodogram shows no peak above the configured prominence.
class NoPeakError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Normal equations of a sinusoid regression are (numerically) singular.
class SingularFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A statistical estimator could not produce a value from its input.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace srh
