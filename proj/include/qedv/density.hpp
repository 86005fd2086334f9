#pragma once

// Spectral densities rho(p) over momentum magnitude. A stationary kernel is
// S(tau) = int_0^inf rho(p) e^{-i p tau} dp; the transverse projector of the
// vacuum two-point function is already folded into rho.

#include "qedv/atom.hpp"
#include "qedv/quad.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace qedv {

struct SpectralDensity {
  std::function<double(double)> value;
  /// rho at complex argument; needed only by the second-sheet pole search.
  std::function<cplx(cplx)> analytic_extension;
  Decay decay;
  /// Location of the maximum.
  double peak = 1.0;
  /// Characteristic spread of the spectrum (sets strip and contour scales).
  double width = 1.0;
  std::string label;
  /// +1: S(tau) = int rho e^{-i p tau}; -1: the conjugate kernel
  /// int rho e^{+i p tau} (negative-frequency mirror).
  int orientation = 1;

  double operator()(double p) const { return value(p); }
  bool has_extension() const { return static_cast<bool>(analytic_extension); }
  SpectralDensity mirrored() const;
};

/// (alpha^2 / (3 pi^2)) p / [(p/alpha)^2 + 9/4]^4. Throws for p < 0.
double hydrogen_vacuum_density(double p, double alpha);

/// Vacuum density of the hydrogen 2P -> 1S transition, with its rational
/// analytic extension and p^{-7} decay bound.
SpectralDensity hydrogen_density(double alpha);

/// rho(p) = eta p e^{-p / cutoff}; entire, so the extension is exact.
SpectralDensity ohmic_density(double eta, double cutoff);

/// Piecewise-cubic (PCHIP) interpolation of a table with strictly increasing
/// p. Below the first node the density falls linearly to zero at p = 0;
/// beyond the last node it continues as rho_N (p_N/p)^tail_exponent. No
/// analytic extension.
SpectralDensity tabulated_density(std::vector<double> p, std::vector<double> rho,
                                  double tail_exponent, std::string label = "table");

/// rho(p) = p / (2 (2 pi)^3) * int dOmega |P_T chi(p n)|^2 by product
/// quadrature over the unit sphere. Decay metadata must be supplied since
/// it cannot be inferred from samples.
SpectralDensity density_from_smearing(SmearingFunction chi, Decay decay, double peak, double width,
                                      int polar_panels = 4, int azimuthal_nodes = 48);

}  // namespace qedv
