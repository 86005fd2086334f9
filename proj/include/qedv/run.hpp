#pragma once

// Orchestration behind the qedvolterra tool and its output formats.

#include "qedv/config.hpp"
#include "qedv/density.hpp"
#include "qedv/fit.hpp"
#include "qedv/kernels.hpp"
#include "qedv/laplace.hpp"
#include "qedv/volterra.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qedv {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

/// The kernel and parameters a configuration describes.
struct Problem {
  ModelParams params;
  KernelEvaluator kernel;
  /// Density of the stationary kernel; empty for non-stationary states and
  /// for alpha = 0.
  std::optional<SpectralDensity> density;
};

/// Throws ConfigError when tables are missing or parameters inconsistent.
Problem build_problem(const RunConfig& cfg);

/// Time step actually used: cfg.dt, or default_time_step when it is 0.
double effective_dt(const RunConfig& cfg, const ModelParams& params);

/// Decay time 1/gamma_markov measured in steps, or 0 when there is no decay.
double steps_per_decay_time(const SpectralDensity& rho, const ModelParams& params, double dt);

inline constexpr double kMaxStepsPerDecay = 1e9;

/// 17 significant digits in scientific notation; "nan", "inf", "-inf".
std::string format_double(double x);

/// Header `t,re_c,im_c,abs2_c`, one line per grid time.
void write_series_csv(std::ostream& out, const AmplitudeSeries& series);

/// Rates of one configuration.
struct RateSummary {
  double alpha = 0.0;
  double omega = 0.0;
  LaplaceAnalysis laplace;
  std::optional<DecayFit> fit;
  /// Why the fit is absent, if it is.
  std::string fit_note;
};

RateSummary compute_rates(const RunConfig& cfg);

/// `key = value` lines: alpha, omega, gamma_markov, gamma_pole, pole_re,
/// pole_im, lamb_shift, residual, gamma_fit, fit_intercept, fit_r_squared,
/// fit_t1, fit_t2, fit_reliable, gamma_markov_per_s.
void write_summary(std::ostream& out, const RateSummary& summary);

/// Runs the configured mode. Diagnostics go to `log`; the exit code follows
/// ExitCode (configuration problems 2, numerical failures 3).
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace qedv
