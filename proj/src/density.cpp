#include "qedv/density.hpp"

#include "pchip.hpp"
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace qedv {

namespace {
constexpr double kPi = std::numbers::pi;
}

SpectralDensity SpectralDensity::mirrored() const {
  SpectralDensity out = *this;
  out.orientation = -orientation;
  out.label = label + "_mirrored";
  return out;
}

double hydrogen_vacuum_density(double p, double alpha) {
  if (p < 0.0) throw std::invalid_argument("hydrogen_vacuum_density: p must be >= 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("hydrogen_vacuum_density: alpha must be > 0");
  const double u = p / alpha;
  const double d = u * u + 2.25;
  const double d2 = d * d;
  return alpha * alpha / (3.0 * kPi * kPi) * p / (d2 * d2);
}

SpectralDensity hydrogen_density(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("hydrogen_density: alpha must be > 0");
  SpectralDensity rho;
  rho.value = [alpha](double p) { return hydrogen_vacuum_density(p, alpha); };
  rho.analytic_extension = [alpha](cplx z) {
    const cplx u = z / alpha;
    const cplx d = u * u + 2.25;
    const cplx d2 = d * d;
    return alpha * alpha / (3.0 * kPi * kPi) * z / (d2 * d2);
  };
  rho.decay = Decay::algebraic(7.0, std::pow(alpha, 10) / (3.0 * kPi * kPi));
  rho.peak = alpha * std::sqrt(9.0 / 28.0);
  rho.width = alpha;
  rho.label = "hydrogen_vacuum";
  return rho;
}

SpectralDensity ohmic_density(double eta, double cutoff) {
  if (!(eta >= 0.0) || !(cutoff > 0.0)) {
    throw std::invalid_argument("ohmic_density: need eta >= 0 and cutoff > 0");
  }
  SpectralDensity rho;
  rho.value = [eta, cutoff](double p) { return eta * p * std::exp(-p / cutoff); };
  rho.analytic_extension = [eta, cutoff](cplx z) { return eta * z * std::exp(-z / cutoff); };
  // p e^{-p/c} <= (2c/e) e^{-p/(2c)}
  rho.decay = Decay::exponential(0.5 / cutoff, eta * 2.0 * cutoff / std::numbers::e);
  rho.peak = cutoff;
  rho.width = cutoff;
  rho.label = "ohmic";
  return rho;
}

SpectralDensity tabulated_density(std::vector<double> p, std::vector<double> rho,
                                  double tail_exponent, std::string label) {
  if (p.size() != rho.size()) throw std::invalid_argument("tabulated_density: column length mismatch");
  if (p.size() < 4) throw std::invalid_argument("tabulated_density: need at least 4 rows");
  if (!(tail_exponent >= 2.0)) {
    throw std::invalid_argument("tabulated_density: tail exponent must be >= 2");
  }
  if (p.front() < 0.0) throw std::invalid_argument("tabulated_density: p must be >= 0");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0 && !(p[i] > p[i - 1])) {
      throw std::invalid_argument("tabulated_density: p must be strictly increasing");
    }
    if (!(rho[i] >= 0.0) || !std::isfinite(rho[i])) {
      throw std::invalid_argument("tabulated_density: rho must be finite and nonnegative");
    }
  }

  const double p_first = p.front();
  const double rho_first = rho.front();
  const double p_last = p.back();
  const double rho_last = rho.back();

  const auto peak_it = std::max_element(rho.begin(), rho.end());
  const double peak = p[static_cast<std::size_t>(peak_it - rho.begin())];
  double mass = 0.0;
  double first_moment = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double h = p[i] - p[i - 1];
    mass += 0.5 * h * (rho[i] + rho[i - 1]);
    first_moment += 0.5 * h * (p[i] * rho[i] + p[i - 1] * rho[i - 1]);
  }
  const double mean = mass > 0.0 ? first_moment / mass : peak;

  using boost::math::interpolators::pchip;
  auto spline = std::make_shared<const pchip<std::vector<double>>>(std::move(p), std::move(rho));

  SpectralDensity out;
  out.value = [spline, p_first, rho_first, p_last, rho_last, tail_exponent](double q) {
    if (q < 0.0) throw std::invalid_argument("tabulated density: p must be >= 0");
    if (q < p_first) return p_first > 0.0 ? rho_first * q / p_first : rho_first;
    if (q > p_last) return rho_last * std::pow(p_last / q, tail_exponent);
    return std::max(0.0, (*spline)(q));
  };
  out.decay = Decay::algebraic(tail_exponent, rho_last * std::pow(p_last, tail_exponent), p_last);
  out.peak = peak > 0.0 ? peak : mean;
  out.width = std::max(peak, mean);
  out.label = std::move(label);
  return out;
}

SpectralDensity density_from_smearing(SmearingFunction chi, Decay decay, double peak, double width,
                                      int polar_panels, int azimuthal_nodes) {
  if (polar_panels < 1 || azimuthal_nodes < 4) {
    throw std::invalid_argument("density_from_smearing: angular grid too coarse");
  }
  using gauss = boost::math::quadrature::gauss<double, 10>;

  // Nodes (cos theta, weight) of a composite Gauss-Legendre rule on [-1, 1].
  std::vector<std::pair<double, double>> polar;
  const double panel = 2.0 / polar_panels;
  for (int k = 0; k < polar_panels; ++k) {
    const double mid = -1.0 + (k + 0.5) * panel;
    const auto& x = gauss::abscissa();
    const auto& w = gauss::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      polar.emplace_back(mid + 0.5 * panel * x[i], 0.5 * panel * w[i]);
      polar.emplace_back(mid - 0.5 * panel * x[i], 0.5 * panel * w[i]);
    }
  }

  auto chi_ptr = std::make_shared<const SmearingFunction>(std::move(chi));
  SpectralDensity out;
  out.value = [chi_ptr, polar = std::move(polar), azimuthal_nodes](double p) {
    if (p < 0.0) throw std::invalid_argument("density_from_smearing: p must be >= 0");
    if (p == 0.0) return 0.0;
    const double dphi = 2.0 * kPi / azimuthal_nodes;
    double sphere = 0.0;
    for (const auto& [c, w] : polar) {
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      double ring = 0.0;
      for (int j = 0; j < azimuthal_nodes; ++j) {
        const double phi = j * dphi;
        const Vec3 n(s * std::cos(phi), s * std::sin(phi), c);
        const Vec3 mom = p * n;
        ring += transverse_part(mom, (*chi_ptr)(mom)).squaredNorm();
      }
      sphere += w * ring * dphi;
    }
    return p / (2.0 * 8.0 * kPi * kPi * kPi) * sphere;
  };
  out.decay = decay;
  out.peak = peak;
  out.width = width;
  out.label = "from_smearing_" + chi_ptr->label;
  return out;
}

}  // namespace qedv
