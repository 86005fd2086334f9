#pragma once

// Laplace-domain analysis of stationary kernels:
//
//   S^(s) = int_0^inf e^{-st} S(t) dt = int_0^inf rho(p) / (s + i p) dp,
//   c^(s) = 1 / (s + alpha S^(s - i omega)).
//
// S^ has a branch cut on s in -i[0, inf) (on +i[0, inf) for a mirrored
// density). Its continuation across the cut is
//   S^_II(s) = S^(s) + 2 pi rho(i s),   Re s < 0,
// which needs rho at complex argument.

#include "qedv/atom.hpp"
#include "qedv/density.hpp"
#include "qedv/quad.hpp"
#include "qedv/volterra.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace qedv {

/// Throws std::invalid_argument for Re s <= 0.
cplx s_hat(const SpectralDensity& rho, cplx s, const QuadConfig& quad = {});

/// S^ continued from Re s > 0 through the cut; equal to s_hat for Re s > 0.
/// Throws std::invalid_argument without an analytic extension.
cplx s_hat_second_sheet(const SpectralDensity& rho, cplx s, const QuadConfig& quad = {});

/// 1 / (s + alpha S^(s - i omega)), Re s > 0.
cplx c_hat(const SpectralDensity& rho, double alpha, double omega, cplx s, const QuadConfig& quad = {});

/// 2 pi alpha rho(omega); zero when the resonance omega lies off the
/// density's frequency axis (orientation * omega < 0).
double markov_rate(const SpectralDensity& rho, double alpha, double omega);
double markov_rate(const SpectralDensity& rho, const ModelParams& params);

struct Pole {
  cplx s0;
  /// |s0 + alpha S^_II(s0 - i omega)|.
  double residual = 0.0;
  int iterations = 0;

  double gamma() const { return -2.0 * s0.real(); }
};

/// Newton iteration on F(s) = s + alpha S^_II(s - i omega), stopped when
/// |F| < 1e-12 and the step is below 1e-9 |s|. The default seed is
/// -alpha S^(eps - i omega). omega may be negative (for a mirrored density).
///
/// Throws std::invalid_argument without an analytic extension or for
/// alpha <= 0, NumericalError after 50 iterations or for a root with
/// Re s0 > 0.
Pole find_pole(const SpectralDensity& rho, double alpha, double omega,
               std::optional<cplx> s_init = std::nullopt, const QuadConfig& quad = {});
Pole find_pole(const SpectralDensity& rho, const ModelParams& params,
               std::optional<cplx> s_init = std::nullopt, const QuadConfig& quad = {});

/// Newton from 8 seeds around the default seed; distinct converged roots
/// with |Im s0| <= rho.width, ordered by decreasing Re s0.
std::vector<Pole> find_poles(const SpectralDensity& rho, const ModelParams& params, const QuadConfig& quad = {});

struct BromwichOptions {
  /// Target absolute error of c(t).
  double tolerance = 1e-6;
  std::size_t max_nodes = std::size_t{1} << 20;
  QuadConfig quad;
};

struct BromwichResult {
  AmplitudeSeries series;
  /// Aliasing plus truncation bound per grid point.
  std::vector<double> error_estimate;
  bool within_tolerance = false;
  double sigma0 = 0.0;
  std::size_t nodes = 0;
};

/// c(t) from the Bromwich integral along Re s = sigma0, trapezoid in Im s
/// with spacing pi/(2 t_max). The 1/s and alpha S(0)/s^3 asymptotics are
/// removed analytically before summation.
BromwichResult bromwich_invert(const SpectralDensity& rho, const ModelParams& params, const TimeGrid& grid,
                               const BromwichOptions& options = {});

struct LaplaceAnalysis {
  SpectralDensity density;
  ModelParams params;
  /// NaN when the density has no analytic extension.
  cplx pole{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  double gamma_pole = std::numeric_limits<double>::quiet_NaN();
  double gamma_markov = 0.0;
  /// Im s0: frequency shift of the amplitude in the rotating frame.
  double shift = std::numeric_limits<double>::quiet_NaN();
  double residual = std::numeric_limits<double>::quiet_NaN();
};

/// Markov rate and, if an extension exists, the resonance pole.
LaplaceAnalysis analyze(const SpectralDensity& rho, const ModelParams& params, const QuadConfig& quad = {});

}  // namespace qedv
