#include "qedv/run.hpp"

#include "parallel.hpp"
#include "qedv/errors.hpp"
#include "qedv/table.hpp"
#include "qedv/units.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace qedv {

namespace {

struct Source {
  ModelParams params;
  std::optional<SpectralDensity> vacuum;
  std::optional<SmearingFunction> chi;
};

Source transition_source(const RunConfig& cfg) {
  Source src;
  if (cfg.transition == Transition::hydrogen_2p1s) {
    // alpha = 0 decouples the atom; omega = 0 is then the consistent limit.
    src.params = cfg.alpha > 0.0 ? ModelParams::hydrogen_2p1s(cfg.alpha) : ModelParams(0.0, 0.0);
    if (cfg.alpha > 0.0) {
      src.vacuum = hydrogen_density(cfg.alpha);
      src.chi = hydrogen_smearing(cfg.alpha);
    }
  } else {
    src.params = ModelParams(cfg.alpha, cfg.omega);
    if (!cfg.chi_table.empty()) {
      RadialSmearing radial = load_smearing_table(cfg.chi_table, cfg.chi_tail_exponent);
      src.vacuum = radial.density;
      src.chi = radial.chi;
    }
  }
  return src;
}

SpectralDensity custom_density(const RunConfig& cfg) {
  switch (cfg.density) {
    case DensityKind::hydrogen:
      if (!(cfg.alpha > 0.0)) throw ConfigError("density = hydrogen needs alpha > 0");
      return hydrogen_density(cfg.alpha);
    case DensityKind::ohmic:
      return ohmic_density(cfg.ohmic_eta, cfg.ohmic_cutoff);
    case DensityKind::table:
      return load_density_table(cfg.density_table, cfg.density_tail_exponent);
  }
  throw ConfigError("unknown density kind");
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + path + "'");
  return file;
}

void write_kernel_csv(std::ostream& out, const KernelEvaluator& kernel, const TimeGrid& grid) {
  if (kernel.stationary()) {
    std::vector<cplx> values(grid.size());
    detail::parallel_for(grid.size(), [&](std::size_t k) { values[k] = kernel(grid.t(k), 0.0); });
    out << "tau,re_S,im_S\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
      out << format_double(grid.t(k)) << ',' << format_double(values[k].real()) << ','
          << format_double(values[k].imag()) << '\n';
    }
    return;
  }
  out << "t,s,re_S,im_S\n";
  for (std::size_t n = 0; n < grid.size(); ++n) {
    std::vector<cplx> row(n + 1);
    detail::parallel_for(n + 1, [&](std::size_t k) { row[k] = kernel(grid.t(n), grid.t(k)); });
    for (std::size_t k = 0; k <= n; ++k) {
      out << format_double(grid.t(n)) << ',' << format_double(grid.t(k)) << ','
          << format_double(row[k].real()) << ',' << format_double(row[k].imag()) << '\n';
    }
  }
}

// Throws ConfigError when the solve would span more than 1e9 steps per
// decay time and --force is absent.
void guard_scale(const RunConfig& cfg, const Problem& problem, double dt) {
  if (cfg.force || !problem.density) return;
  const double steps = steps_per_decay_time(*problem.density, problem.params, dt);
  if (steps > kMaxStepsPerDecay) {
    std::ostringstream msg;
    msg << "the decay time 1/gamma_markov spans " << format_double(steps)
        << " time steps of dt = " << format_double(dt)
        << "; at this coupling the atomic and decay time scales are ~1e13 apart, so a time-domain solve is "
           "not feasible. Use mode = rates for the decay rate, or pass --force.";
    throw ConfigError(msg.str());
  }
}

AmplitudeSeries solve(const RunConfig& cfg, const Problem& problem) {
  const double dt = effective_dt(cfg, problem.params);
  guard_scale(cfg, problem, dt);
  return solve_ide(problem.kernel, problem.params, TimeGrid::covering(dt, cfg.tmax), cfg.method);
}

struct SweepRow {
  double value = 0.0;
  RateSummary summary;
};

void write_sweep_csv(std::ostream& out, const RunConfig& cfg, const std::vector<SweepRow>& rows) {
  out << (cfg.sweep_axis == SweepAxis::alpha ? "alpha" : "squeeze_r")
      << ",omega,gamma_markov,gamma_pole,pole_re,pole_im,lamb_shift,residual,gamma_fit,fit_r_squared\n";
  for (const auto& row : rows) {
    const auto& s = row.summary;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out << format_double(row.value) << ',' << format_double(s.omega) << ','
        << format_double(s.laplace.gamma_markov) << ',' << format_double(s.laplace.gamma_pole) << ','
        << format_double(s.laplace.pole.real()) << ',' << format_double(s.laplace.pole.imag()) << ','
        << format_double(s.laplace.shift) << ',' << format_double(s.laplace.residual) << ','
        << format_double(s.fit ? s.fit->gamma_fit : nan) << ','
        << format_double(s.fit ? s.fit->r_squared : nan) << '\n';
  }
}

}  // namespace

Problem build_problem(const RunConfig& cfg) {
  cfg.validate();
  Source src = transition_source(cfg);
  Problem problem;
  problem.params = src.params;

  if (cfg.alpha == 0.0) {
    problem.kernel = KernelEvaluator::from_lag([](double) { return cplx(0.0); }, "decoupled");
    return problem;
  }

  KernelSpec spec;
  spec.state = cfg.state;
  spec.quad = cfg.quad;
  if (cfg.state == FieldState::custom) {
    spec.density = custom_density(cfg);
  } else {
    spec.density = src.vacuum;
    spec.chi = src.chi;
  }
  if (cfg.state == FieldState::squeezed_concentrated || cfg.state == FieldState::squeezed_general) {
    std::optional<WavePacket> packet;
    if (cfg.state == FieldState::squeezed_general) {
      packet = gaussian_wavepacket(cfg.squeeze_q, cfg.squeeze_d, cfg.wavepacket_width, cfg.squeeze_amplitude);
    }
    spec.squeeze = SqueezeParams(cfg.squeeze_r, cfg.squeeze_q, cfg.squeeze_d, cfg.squeeze_amplitude, packet);
  }
  problem.kernel = make_kernel(spec);
  if (problem.kernel.stationary()) problem.density = spec.density;
  return problem;
}

double effective_dt(const RunConfig& cfg, const ModelParams& params) {
  return cfg.dt > 0.0 ? cfg.dt : default_time_step(params);
}

double steps_per_decay_time(const SpectralDensity& rho, const ModelParams& params, double dt) {
  const double gamma = markov_rate(rho, params);
  return gamma > 0.0 ? 1.0 / (gamma * dt) : 0.0;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

void write_series_csv(std::ostream& out, const AmplitudeSeries& series) {
  out << "t,re_c,im_c,abs2_c\n";
  for (std::size_t k = 0; k < series.values.size(); ++k) {
    const cplx c = series.values[k];
    out << format_double(series.grid.t(k)) << ',' << format_double(c.real()) << ','
        << format_double(c.imag()) << ',' << format_double(std::norm(c)) << '\n';
  }
}

RateSummary compute_rates(const RunConfig& cfg) {
  const Problem problem = build_problem(cfg);
  RateSummary out;
  out.alpha = problem.params.alpha;
  out.omega = problem.params.omega;
  out.laplace.params = problem.params;
  if (problem.density) {
    out.laplace = analyze(*problem.density, problem.params, cfg.quad);
  } else if (problem.params.alpha > 0.0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.laplace.gamma_markov = nan;
  }

  if (!cfg.fit) {
    out.fit_note = "fit disabled";
    return out;
  }
  const double dt = effective_dt(cfg, problem.params);
  if (!cfg.force && problem.density &&
      steps_per_decay_time(*problem.density, problem.params, dt) > kMaxStepsPerDecay) {
    out.fit_note = "time-domain solve skipped: decay time exceeds 1e9 steps";
    return out;
  }
  const AmplitudeSeries series = solve_ide(problem.kernel, problem.params, TimeGrid::covering(dt, cfg.tmax), cfg.method);
  const double t1 = std::isnan(cfg.fit_t1) ? 0.2 * series.grid.t_max() : cfg.fit_t1;
  const double t2 = std::isnan(cfg.fit_t2) ? 0.9 * series.grid.t_max() : cfg.fit_t2;
  out.fit = fit_decay(series, t1, t2);
  return out;
}

void write_summary(std::ostream& out, const RateSummary& s) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto line = [&out](const char* key, double v) { out << key << " = " << format_double(v) << '\n'; };
  line("alpha", s.alpha);
  line("omega", s.omega);
  line("gamma_markov", s.laplace.gamma_markov);
  line("gamma_pole", s.laplace.gamma_pole);
  line("pole_re", s.laplace.pole.real());
  line("pole_im", s.laplace.pole.imag());
  line("lamb_shift", s.laplace.shift);
  line("residual", s.laplace.residual);
  line("gamma_fit", s.fit ? s.fit->gamma_fit : nan);
  line("fit_intercept", s.fit ? s.fit->intercept : nan);
  line("fit_r_squared", s.fit ? s.fit->r_squared : nan);
  line("fit_t1", s.fit ? s.fit->t1 : nan);
  line("fit_t2", s.fit ? s.fit->t2 : nan);
  out << "fit_reliable = " << (s.fit && s.fit->reliable ? "true" : "false") << '\n';
  line("gamma_markov_per_s", units::rate_to_si(s.laplace.gamma_markov));
}

int run(const RunConfig& cfg, std::ostream& log) {
  try {
    std::ofstream file;
    switch (cfg.mode) {
      case RunMode::kernel: {
        const Problem problem = build_problem(cfg);
        const double dt = effective_dt(cfg, problem.params);
        const TimeGrid grid = TimeGrid::covering(dt, cfg.tmax);
        write_kernel_csv(open_output(cfg.out, file), problem.kernel, grid);
        break;
      }
      case RunMode::solve: {
        const Problem problem = build_problem(cfg);
        const AmplitudeSeries series = solve(cfg, problem);
        write_series_csv(open_output(cfg.out, file), series);
        break;
      }
      case RunMode::rates: {
        const RateSummary summary = compute_rates(cfg);
        if (!summary.fit_note.empty()) log << "note: " << summary.fit_note << '\n';
        write_summary(open_output(cfg.out, file), summary);
        break;
      }
      case RunMode::sweep: {
        cfg.validate();
        std::vector<SweepRow> rows(cfg.sweep_values.size());
        detail::parallel_for(rows.size(), [&](std::size_t i) {
          RunConfig point = cfg;
          point.mode = RunMode::rates;
          if (cfg.sweep_axis == SweepAxis::alpha) {
            point.alpha = cfg.sweep_values[i];
          } else {
            point.squeeze_r = cfg.sweep_values[i];
          }
          rows[i] = {cfg.sweep_values[i], compute_rates(point)};
        });
        write_sweep_csv(open_output(cfg.out, file), cfg, rows);
        break;
      }
    }
    if (file.is_open()) {
      file.close();
      if (!file) throw ConfigError("failed writing '" + cfg.out + "'");
    } else {
      std::cout.flush();
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    log << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace qedv
