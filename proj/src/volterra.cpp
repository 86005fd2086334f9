#include "qedv/volterra.hpp"

#include "parallel.hpp"
#include "qedv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qedv {

namespace {

// alpha e^{i omega (t_n - t_k)} S(t_n, t_k) on the grid t_k = k h, k <= N.
class KernelRows {
 public:
  KernelRows(const KernelEvaluator& kernel, const ModelParams& params, double h, std::size_t N)
      : kernel_(kernel), h_(h), phase_(N + 1) {
    for (std::size_t m = 0; m <= N; ++m) {
      phase_[m] = std::polar(params.alpha, params.omega * static_cast<double>(m) * h);
    }
    if (kernel.has_lag()) {
      lag_.resize(N + 1);
      detail::parallel_for(N + 1, [&](std::size_t m) {
        lag_[m] = phase_[m] * kernel.lag(static_cast<double>(m) * h);
      });
    }
    for (const auto& mode : kernel.modes()) {
      std::vector<cplx> values(N + 1);
      detail::parallel_for(N + 1, [&](std::size_t k) { values[k] = mode.mode(static_cast<double>(k) * h); });
      mode_values_.push_back(std::move(values));
    }
    non_stationary_ = !kernel.stationary();
  }

  cplx operator()(std::size_t n, std::size_t k) const {
    const std::size_t m = n - k;
    cplx value = lag_.empty() ? cplx(0.0) : lag_[m];
    if (non_stationary_) {
      cplx extra = 0.0;
      const auto& modes = kernel_.modes();
      for (std::size_t j = 0; j < modes.size(); ++j) {
        extra += modes[j].delta(mode_values_[j][n], mode_values_[j][k]);
      }
      if (kernel_.pair()) {
        extra += kernel_.pair()(static_cast<double>(n) * h_, static_cast<double>(k) * h_);
      }
      value += phase_[m] * extra;
    }
    return value;
  }

 private:
  const KernelEvaluator& kernel_;
  double h_;
  std::vector<cplx> phase_;
  std::vector<cplx> lag_;
  std::vector<std::vector<cplx>> mode_values_;
  bool non_stationary_ = false;
};

void check_diagonal(cplx knn, double h, std::size_t n) {
  const double weight = 0.5 * h * std::abs(knn);
  if (weight >= 1.0) {
    const double suggested = 1.0 / std::abs(knn);
    throw StepSizeError("solve_ide: diagonal weight alpha*dt/2*|S| = " + std::to_string(weight) +
                            " >= 1 at step " + std::to_string(n) + "; use dt <= " +
                            std::to_string(suggested),
                        suggested);
  }
}

struct Trajectory {
  std::vector<cplx> c;
  std::vector<cplx> F;  // F(t_n) = -int_0^{t_n} K(t_n, s) c(s) ds = c'(t_n)
};

Trajectory trapezoid_run(const KernelRows& K, double h, std::size_t N) {
  Trajectory out{std::vector<cplx>(N + 1), std::vector<cplx>(N + 1)};
  out.c[0] = 1.0;
  out.F[0] = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    cplx B = 0.5 * K(n, 0) * out.c[0];
    for (std::size_t k = 1; k < n; ++k) B += K(n, k) * out.c[k];
    B *= -h;
    const cplx knn = K(n, n);
    check_diagonal(knn, h, n);
    out.c[n] = (out.c[n - 1] + 0.5 * h * (out.F[n - 1] + B)) / (1.0 + 0.25 * h * h * knn);
    out.F[n] = B - 0.5 * h * knn * out.c[n];
  }
  return out;
}

double gregory_weight(std::size_t n, std::size_t k) {
  const std::size_t e = std::min(k, n - k);
  if (e == 0) return 3.0 / 8.0;
  if (e == 1) return 7.0 / 6.0;
  if (e == 2) return 23.0 / 24.0;
  return 1.0;
}

constexpr std::size_t kGregoryStart = 4;
constexpr std::size_t kRichardsonRefinement = 4;

Trajectory gregory_run(const KernelEvaluator& kernel, const ModelParams& params, double h, std::size_t N) {
  Trajectory out{std::vector<cplx>(N + 1), std::vector<cplx>(N + 1)};
  out.c[0] = 1.0;
  out.F[0] = 0.0;

  // Starting values from trapezoid runs at h/M and h/(2M) on [0, 4h].
  const std::size_t start = std::min(N, kGregoryStart);
  if (start > 0) {
    const std::size_t M = kRichardsonRefinement;
    const double h1 = h / static_cast<double>(M);
    const double h2 = 0.5 * h1;
    const KernelRows coarse(kernel, params, h1, start * M);
    const KernelRows fine(kernel, params, h2, 2 * start * M);
    const Trajectory a = trapezoid_run(coarse, h1, start * M);
    const Trajectory b = trapezoid_run(fine, h2, 2 * start * M);
    for (std::size_t j = 1; j <= start; ++j) {
      out.c[j] = (4.0 * b.c[2 * M * j] - a.c[M * j]) / 3.0;
      out.F[j] = (4.0 * b.F[2 * M * j] - a.F[M * j]) / 3.0;
    }
  }
  if (N <= kGregoryStart) return out;

  const KernelRows K(kernel, params, h, N);
  const double w_end = 3.0 / 8.0;
  cplx sum_F = 0.0;
  for (std::size_t j = 0; j <= kGregoryStart; ++j) sum_F += out.F[j];

  for (std::size_t n = kGregoryStart + 1; n <= N; ++n) {
    cplx B = 0.0;
    for (std::size_t k = 0; k < n; ++k) B += gregory_weight(n, k) * K(n, k) * out.c[k];
    B *= -h;
    // sum_{j<n} w_j F_j from the plain sum plus the end corrections.
    const cplx weighted = sum_F + (3.0 / 8.0 - 1.0) * out.F[0] + (7.0 / 6.0 - 1.0) * out.F[1] +
                          (23.0 / 24.0 - 1.0) * out.F[2] + (23.0 / 24.0 - 1.0) * out.F[n - 2] +
                          (7.0 / 6.0 - 1.0) * out.F[n - 1];
    const cplx A = 1.0 + h * weighted;
    const cplx knn = K(n, n);
    check_diagonal(knn, h, n);
    const double g = w_end * h;
    out.c[n] = (A + g * B) / (1.0 + g * g * knn);
    out.F[n] = B - g * knn * out.c[n];
    sum_F += out.F[n];
  }
  return out;
}

void validate(const ModelParams& params) {
  if (!(params.alpha >= 0.0) || !std::isfinite(params.alpha) || !std::isfinite(params.omega)) {
    throw std::invalid_argument("solve_ide: alpha must be finite and >= 0, omega finite");
  }
}

}  // namespace

TimeGrid::TimeGrid(double dt_, std::size_t n) : dt(dt_), n_steps(n) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("TimeGrid: dt must be positive");
  if (n_steps < 1) throw std::invalid_argument("TimeGrid: need at least one step");
}

TimeGrid TimeGrid::covering(double dt, double t_max) {
  if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be positive");
  if (!(t_max > dt)) throw std::invalid_argument("TimeGrid: t_max must exceed dt");
  const auto n = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
  return TimeGrid(dt, n);
}

const char* to_string(Method m) { return m == Method::trapezoid ? "trapezoid" : "gregory4"; }

double AmplitudeSeries::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

AmplitudeSeries solve_ide(const KernelEvaluator& kernel, const ModelParams& params, const TimeGrid& grid,
                          Method method) {
  validate(params);
  AmplitudeSeries out{grid, {}, to_string(method), kernel.label(), params.alpha, params.omega};
  if (params.alpha == 0.0) {
    out.values.assign(grid.size(), cplx(1.0));
    return out;
  }
  if (method == Method::trapezoid) {
    const KernelRows K(kernel, params, grid.dt, grid.n_steps);
    out.values = trapezoid_run(K, grid.dt, grid.n_steps).c;
  } else {
    out.values = gregory_run(kernel, params, grid.dt, grid.n_steps).c;
  }
  return out;
}

ZKernel compute_Z(const KernelEvaluator& kernel, const ModelParams& params, const TimeGrid& grid) {
  if (!kernel.stationary()) throw std::invalid_argument("compute_Z: kernel must be stationary");
  validate(params);
  std::vector<cplx> integrand(grid.size());
  detail::parallel_for(grid.size(), [&](std::size_t m) {
    const double t = grid.t(m);
    integrand[m] = std::polar(params.alpha, params.omega * t) * kernel.lag(t);
  });
  ZKernel z{grid, std::vector<cplx>(grid.size())};
  z.values[0] = 0.0;
  for (std::size_t m = 1; m < grid.size(); ++m) {
    z.values[m] = z.values[m - 1] + 0.5 * grid.dt * (integrand[m - 1] + integrand[m]);
  }
  return z;
}

AmplitudeSeries solve_integral_form(const ZKernel& z, const TimeGrid& grid) {
  if (z.grid.n_steps != grid.n_steps || z.grid.dt != grid.dt || z.values.size() != grid.size()) {
    throw std::invalid_argument("solve_integral_form: Z was tabulated on a different grid");
  }
  const double h = grid.dt;
  AmplitudeSeries out{grid, std::vector<cplx>(grid.size()), "integral_trapezoid", "", 0.0, 0.0};
  auto& c = out.values;
  c[0] = 1.0;
  const cplx diag = 1.0 + 0.5 * h * z.values[0];
  for (std::size_t n = 1; n < grid.size(); ++n) {
    cplx sum = 0.5 * z.values[n] * c[0];
    for (std::size_t k = 1; k < n; ++k) sum += z.values[n - k] * c[k];
    c[n] = (1.0 - h * sum) / diag;
  }
  return out;
}

double default_time_step(const ModelParams& params) {
  double dt = std::numeric_limits<double>::infinity();
  if (params.omega > 0.0) dt = std::min(dt, 0.05 / params.omega);
  if (params.alpha > 0.0) dt = std::min(dt, 0.05 * (2.0 / 3.0) / params.alpha);
  return std::isfinite(dt) ? dt : 0.05;
}

OrderEstimate estimate_order(const OrderProblem& problem, Method method) {
  std::array<AmplitudeSeries, 3> runs;
  for (int level = 0; level < 3; ++level) {
    const double h = problem.dt / static_cast<double>(1 << level);
    const auto steps = static_cast<std::size_t>(std::llround(problem.t_max / problem.dt)) << level;
    runs[static_cast<std::size_t>(level)] = solve_ide(problem.kernel, problem.params, TimeGrid(h, steps), method);
  }
  const std::size_t coarse = runs[0].values.size();

  OrderEstimate est;
  if (problem.exact) {
    for (std::size_t level = 0; level < 3; ++level) {
      double e = 0.0;
      for (std::size_t k = 0; k < coarse; ++k) {
        const cplx v = runs[level].values[k << level];
        e = std::max(e, std::abs(v - problem.exact(runs[0].grid.t(k))));
      }
      est.errors[level] = e;
    }
    est.inconclusive = std::min({est.errors[0], est.errors[1], est.errors[2]}) < 1e-13;
    if (!est.inconclusive) est.order = std::log2(est.errors[1] / est.errors[2]);
  } else {
    for (std::size_t level = 0; level < 2; ++level) {
      double d = 0.0;
      for (std::size_t k = 0; k < coarse; ++k) {
        d = std::max(d, std::abs(runs[level].values[k << level] - runs[level + 1].values[k << (level + 1)]));
      }
      est.errors[level] = d;
    }
    est.errors[2] = 0.0;
    est.inconclusive = std::min(est.errors[0], est.errors[1]) < 1e-13;
    if (!est.inconclusive) est.order = std::log2(est.errors[0] / est.errors[1]);
  }
  return est;
}

}  // namespace qedv
