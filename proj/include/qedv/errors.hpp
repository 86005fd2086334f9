#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qedv {

/// Invalid or incomplete run configuration. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Any numerical failure (non-convergence, refused step size, ...). Maps to
/// CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of subdivisions; carries the best estimate.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, std::complex<double> best, double err)
      : NumericalError(what), best_estimate(best), error_estimate(err) {}

  std::complex<double> best_estimate;
  double error_estimate;
};

/// The requested time step makes the implicit diagonal weight too large.
class StepSizeError : public NumericalError {
 public:
  StepSizeError(const std::string& what, double suggested)
      : NumericalError(what), suggested_dt(suggested) {}

  double suggested_dt;
};

}  // namespace qedv
