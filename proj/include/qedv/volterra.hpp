#pragma once

// Time-domain solution of the excited-state amplitude equation
//
//   c'(t) = -alpha int_0^t c(s) e^{i omega (t - s)} S(t, s) ds,  c(0) = 1,
//
// by implicit product integration, and of its convolution integral form
//
//   c(T) = 1 - int_0^T Z(T - s) c(s) ds,  Z(tau) = alpha int_0^tau S(t, 0) e^{i omega t} dt
//
// for stationary kernels.

#include "qedv/atom.hpp"
#include "qedv/kernels.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace qedv {

struct TimeGrid {
  double dt = 0.0;
  std::size_t n_steps = 0;

  TimeGrid() = default;
  /// dt > 0, n_steps >= 1.
  TimeGrid(double dt, std::size_t n_steps);
  /// Smallest grid with spacing dt reaching t_max (t_max > dt required).
  static TimeGrid covering(double dt, double t_max);

  double t(std::size_t k) const { return static_cast<double>(k) * dt; }
  double t_max() const { return t(n_steps); }
  std::size_t size() const { return n_steps + 1; }
};

enum class Method { trapezoid, gregory4 };

const char* to_string(Method m);

struct AmplitudeSeries {
  TimeGrid grid;
  std::vector<cplx> values;
  std::string method;
  std::string kernel_label;
  double alpha = 0.0;
  double omega = 0.0;

  double max_abs() const;
};

struct ZKernel {
  TimeGrid grid;
  std::vector<cplx> values;
};

/// Solves the integro-differential equation on the grid.
///
/// Trapezoid: composite trapezoid for the memory integral and for c' (second
/// order). Gregory-4: fourth-order Gregory end corrections on both integrals,
/// started from four Richardson-extrapolated trapezoid steps.
///
/// Stationary kernels are sampled once per lag; otherwise the stationary
/// part is sampled per lag, squeezed mode functions once per grid time and
/// pair callbacks once per (t_n, t_k) with k <= n.
///
/// Throws StepSizeError when alpha dt/2 |S(t_n, t_n)| >= 1 at any step.
AmplitudeSeries solve_ide(const KernelEvaluator& kernel, const ModelParams& params, const TimeGrid& grid,
                          Method method = Method::trapezoid);

/// Cumulative trapezoid of alpha S(t, 0) e^{i omega t}. Throws
/// std::invalid_argument for a non-stationary kernel.
ZKernel compute_Z(const KernelEvaluator& kernel, const ModelParams& params, const TimeGrid& grid);

/// Trapezoid product integration of the second-kind integral equation.
/// Throws std::invalid_argument if z was tabulated on a different grid.
AmplitudeSeries solve_integral_form(const ZKernel& z, const TimeGrid& grid);

/// dt = min(0.05/omega, 0.05 (2/3) / alpha), ignoring terms whose scale is
/// infinite (omega = 0 or alpha = 0).
double default_time_step(const ModelParams& params);

/// A problem for empirical convergence checks. Without `exact`, successive
/// differences of the three solutions are used instead (Richardson).
struct OrderProblem {
  KernelEvaluator kernel;
  ModelParams params;
  double t_max = 1.0;
  double dt = 0.1;
  std::function<cplx(double)> exact;
};

struct OrderEstimate {
  double order = 0.0;
  /// Max errors at dt, dt/2, dt/4 (or the two successive differences).
  std::array<double, 3> errors{};
  /// Set when an error sits at the floating-point floor.
  bool inconclusive = false;
};

OrderEstimate estimate_order(const OrderProblem& problem, Method method);

}  // namespace qedv
