#pragma once

// Run configuration of the qedvolterra command-line tool. Every field has a
// config-file key of the same name (flat `key = value` lines, '#' comments)
// and a `--key` flag; flags override the file.

#include "qedv/kernels.hpp"
#include "qedv/quad.hpp"
#include "qedv/volterra.hpp"

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace qedv {

enum class RunMode { kernel, solve, rates, sweep };
enum class Transition { hydrogen_2p1s, custom };
enum class DensityKind { hydrogen, ohmic, table };
enum class SweepAxis { alpha, squeeze_r };

struct RunConfig {
  RunMode mode = RunMode::solve;
  FieldState state = FieldState::vacuum;

  /// Coupling; the word `physical` in a config selects 1/137.035999.
  double alpha = 0.0;
  Transition transition = Transition::hydrogen_2p1s;
  /// Transition frequency for transition = custom.
  double omega = std::numeric_limits<double>::quiet_NaN();
  /// Four-column (p, v_x, v_y, v_z) radial smearing table for transition = custom.
  std::string chi_table;
  double chi_tail_exponent = 4.0;

  /// Stationary density of state = custom.
  DensityKind density = DensityKind::ohmic;
  double ohmic_eta = 1.0;
  double ohmic_cutoff = 1.0;
  std::string density_table;
  double density_tail_exponent = 4.0;

  double squeeze_r = 0.0;
  Vec3 squeeze_q = Vec3(0.0, 0.0, 0.0);
  CVec3 squeeze_d = CVec3(0.0, 0.0, 0.0);
  double squeeze_amplitude = 1.0;
  /// Gaussian wavepacket width for squeezed_general.
  double wavepacket_width = 0.0;

  /// 0 selects default_time_step.
  double dt = 0.0;
  double tmax = 10.0;
  Method method = Method::trapezoid;
  QuadConfig quad;

  /// Output file; "-" writes to stdout.
  std::string out = "-";
  /// Fit window; NaN selects 0.2 tmax and 0.9 tmax.
  double fit_t1 = std::numeric_limits<double>::quiet_NaN();
  double fit_t2 = std::numeric_limits<double>::quiet_NaN();
  /// In rates/sweep modes, also solve and fit |c|^2.
  bool fit = true;

  SweepAxis sweep_axis = SweepAxis::alpha;
  std::vector<double> sweep_values;

  /// Allow solves whose decay time spans more than 1e9 steps.
  bool force = false;

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

/// Parses `qedvolterra <mode> [--config FILE] [--key value ...]`.
/// Throws ConfigError on unknown keys, bad values or a missing mode.
/// Returns std::nullopt after writing help to `help` when --help was given.
std::optional<RunConfig> parse_run_config(int argc, const char* const* argv, std::ostream& help);

}  // namespace qedv
