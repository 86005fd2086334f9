#include "qedv/config.hpp"

#include "qedv/errors.hpp"
#include "qedv/units.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <map>
#include <ostream>

namespace qedv {

namespace {

template <typename E>
CLI::CheckedTransformer choices(const std::map<std::string, E>& table) {
  return CLI::CheckedTransformer(table, CLI::ignore_case);
}

double parse_alpha(const std::string& text) {
  if (text == "physical") return units::codata2018::fine_structure;
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("alpha: expected a number or 'physical', got '" + text + "'");
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

void RunConfig::validate() const {
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be finite and >= 0");
  require(dt >= 0.0 && std::isfinite(dt), "dt must be >= 0 (0 selects the default step)");
  require(std::isfinite(tmax) && tmax > 0.0, "tmax must be positive");
  require(dt == 0.0 || tmax > dt, "tmax must exceed dt");
  try {
    quad.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (transition == Transition::custom) {
    require(std::isfinite(omega) && omega >= 0.0, "transition = custom needs omega >= 0");
  } else {
    require(std::isnan(omega), "omega is fixed by transition = hydrogen_2p1s; set transition = custom");
  }

  const bool needs_chi = state != FieldState::custom;
  if (needs_chi && transition == Transition::custom) {
    require(!chi_table.empty(), "state needs chi_table for transition = custom");
  }

  if (state == FieldState::custom) {
    if (density == DensityKind::ohmic) {
      require(ohmic_eta >= 0.0 && ohmic_cutoff > 0.0, "ohmic density needs ohmic_eta >= 0, ohmic_cutoff > 0");
    }
    if (density == DensityKind::table) require(!density_table.empty(), "density = table needs density_table");
  }

  if (state == FieldState::squeezed_concentrated || state == FieldState::squeezed_general) {
    require(std::isfinite(squeeze_r), "squeeze_r must be finite");
    require(squeeze_q.norm() > 0.0, "squeezed states need a nonzero squeeze_q");
    require(squeeze_d.norm() > 0.0, "squeezed states need a nonzero squeeze_d");
    if (state == FieldState::squeezed_general) {
      require(wavepacket_width > 0.0, "squeezed_general needs wavepacket_width > 0");
    }
  }

  if (!std::isnan(fit_t1) || !std::isnan(fit_t2)) {
    require(std::isfinite(fit_t1) && std::isfinite(fit_t2) && fit_t1 >= 0.0 && fit_t1 < fit_t2 &&
                fit_t2 <= tmax,
            "fit window needs 0 <= fit_t1 < fit_t2 <= tmax");
  }

  if (mode == RunMode::sweep) {
    require(!sweep_values.empty(), "sweep mode needs sweep_values");
    for (double v : sweep_values) require(std::isfinite(v), "sweep_values must be finite");
    if (sweep_axis == SweepAxis::alpha) {
      for (double v : sweep_values) require(v > 0.0, "alpha sweep values must be positive");
    }
  }
}

std::optional<RunConfig> parse_run_config(int argc, const char* const* argv, std::ostream& help) {
  RunConfig cfg;
  CLI::App app{"Spontaneous emission of a two-level atom from the amplitude Volterra equation.",
               "qedvolterra"};
  app.set_config("--config", "", "flat key = value file; flags override its values");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.get_formatter()->column_width(34);

  app.add_option("mode", cfg.mode, "kernel | solve | rates | sweep")
      ->required()
      ->transform(choices<RunMode>({{"kernel", RunMode::kernel},
                                    {"solve", RunMode::solve},
                                    {"rates", RunMode::rates},
                                    {"sweep", RunMode::sweep}}));
  app.add_option("--state", cfg.state, "vacuum | squeezed_concentrated | squeezed_general | custom")
      ->transform(choices<FieldState>({{"vacuum", FieldState::vacuum},
                                       {"squeezed_concentrated", FieldState::squeezed_concentrated},
                                       {"squeezed_general", FieldState::squeezed_general},
                                       {"custom", FieldState::custom}}));

  std::string alpha_text = "0";
  app.add_option("--alpha", alpha_text, "coupling constant, or 'physical'");
  app.add_option("--transition", cfg.transition, "hydrogen_2p1s | custom")
      ->transform(choices<Transition>({{"hydrogen_2p1s", Transition::hydrogen_2p1s},
                                       {"custom", Transition::custom}}));
  app.add_option("--omega", cfg.omega, "transition frequency (transition = custom)");
  app.add_option("--chi_table", cfg.chi_table, "four-column p, v_x, v_y, v_z table");
  app.add_option("--chi_tail_exponent", cfg.chi_tail_exponent, "power-law decay of v beyond the table");

  app.add_option("--density", cfg.density, "custom-state density: hydrogen | ohmic | table")
      ->transform(choices<DensityKind>(
          {{"hydrogen", DensityKind::hydrogen}, {"ohmic", DensityKind::ohmic}, {"table", DensityKind::table}}));
  app.add_option("--ohmic_eta", cfg.ohmic_eta, "rho(p) = eta p exp(-p/cutoff)");
  app.add_option("--ohmic_cutoff", cfg.ohmic_cutoff);
  app.add_option("--density_table", cfg.density_table, "two-column p, rho table");
  app.add_option("--density_tail_exponent", cfg.density_tail_exponent);

  std::vector<double> q;
  std::vector<double> d;
  app.add_option("--squeeze_r", cfg.squeeze_r, "squeeze amplitude r");
  app.add_option("--squeeze_q", q, "carrier momentum x,y,z")->expected(3)->delimiter(',');
  app.add_option("--squeeze_d", d, "polarization x,y,z (orthogonal to q)")->expected(3)->delimiter(',');
  app.add_option("--squeeze_amplitude", cfg.squeeze_amplitude);
  app.add_option("--wavepacket_width", cfg.wavepacket_width, "Gaussian width (squeezed_general)");

  app.add_option("--dt", cfg.dt, "time step; 0 selects a default from alpha and omega");
  app.add_option("--tmax", cfg.tmax, "end of the time grid");
  app.add_option("--method", cfg.method, "trapezoid | gregory4")
      ->transform(choices<Method>({{"trapezoid", Method::trapezoid}, {"gregory4", Method::gregory4}}));
  app.add_option("--quad_rel_tol", cfg.quad.rel_tol);
  app.add_option("--quad_abs_tol", cfg.quad.abs_tol);
  app.add_option("--quad_max_subdivisions", cfg.quad.max_subdivisions);
  app.add_option("--quad_tail", cfg.quad.tail_strategy, "acceleration | truncate")
      ->transform(choices<TailStrategy>({{"acceleration", TailStrategy::between_zeros_acceleration},
                                         {"truncate", TailStrategy::truncate_with_bound}}));

  app.add_option("--out", cfg.out, "output file, '-' for stdout");
  app.add_option("--fit_t1", cfg.fit_t1, "fit window start (default 0.2 tmax)");
  app.add_option("--fit_t2", cfg.fit_t2, "fit window end (default 0.9 tmax)");
  app.add_option("--fit", cfg.fit, "solve and fit |c|^2 in rates and sweep modes");
  app.add_option("--sweep_axis", cfg.sweep_axis, "alpha | squeeze_r")
      ->transform(choices<SweepAxis>({{"alpha", SweepAxis::alpha}, {"squeeze_r", SweepAxis::squeeze_r}}));
  app.add_option("--sweep_values", cfg.sweep_values, "comma-separated axis values")->delimiter(',');
  app.add_flag("--force", cfg.force, "allow solves spanning more than 1e9 steps per decay time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    help << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  cfg.alpha = parse_alpha(alpha_text);
  if (!q.empty()) cfg.squeeze_q = Vec3(q[0], q[1], q[2]);
  if (!d.empty()) cfg.squeeze_d = CVec3(d[0], d[1], d[2]);
  cfg.validate();
  return cfg;
}

}  // namespace qedv
