#pragma once

// Exponential decay fit of |c(t)|^2.

#include "qedv/volterra.hpp"

#include <cstddef>

namespace qedv {

struct DecayFit {
  double gamma_fit = 0.0;
  /// Fitted log|c|^2 at t = 0.
  double intercept = 0.0;
  double r_squared = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  std::size_t points = 0;
  /// r_squared >= kReliableRSquared.
  bool reliable = false;

  static constexpr double kReliableRSquared = 0.99;
};

/// Least-squares line through (t, log|c(t)|^2) for grid times in [t1, t2];
/// gamma_fit = -slope. Throws std::invalid_argument for a window outside
/// the series, fewer than 10 points, or c = 0 inside the window.
DecayFit fit_decay(const AmplitudeSeries& series, double t1, double t2);

/// The window [0.2 t_max, 0.9 t_max].
DecayFit fit_decay(const AmplitudeSeries& series);

}  // namespace qedv
