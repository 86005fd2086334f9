#include "qedv/laplace.hpp"

#include "parallel.hpp"
#include "qedv/errors.hpp"
#include "qedv/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qedv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double density_scale(const SpectralDensity& rho) { return rho(rho.peak) * std::max(rho.peak, rho.width); }

// int_0^inf rho(p) / (s + i p) dp for a density of orientation +1, valid for
// any s off the cut -i[0, inf). On Re s = 0 the limit from the right is taken.
cplx cauchy_transform(const SpectralDensity& rho, cplx s, const QuadConfig& cfg) {
  const double sigma = s.real();
  const double y = s.imag();
  const double p0 = -y;
  if (s == cplx(0.0)) throw std::invalid_argument("s_hat: s = 0 is a branch point");

  QuadConfig local = cfg;
  local.abs_tol = std::min(cfg.abs_tol, cfg.rel_tol * density_scale(rho) / (std::abs(s) + rho.width));
  if (!(local.abs_tol > 0.0)) local.abs_tol = cfg.abs_tol;

  const double P = std::max({2.0 * p0, 20.0 * rho.peak, 10.0 * rho.width, rho.decay.onset});
  const bool subtract = p0 > 0.0 && p0 < P;
  const double rho0 = subtract ? rho(p0) : 0.0;

  const ComplexFn head = [&](double p) { return (rho(p) - rho0) / cplx(sigma, y + p); };
  std::vector<double> cuts{0.0};
  if (subtract) cuts.push_back(p0);
  if (rho.peak > 0.0 && rho.peak < P && rho.peak != p0) cuts.push_back(rho.peak);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(P);

  QuadConfig piece = local;
  piece.abs_tol = local.abs_tol / static_cast<double>(cuts.size());
  cplx total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate_finite(head, cuts[i], cuts[i + 1], piece).value;
  }

  if (subtract) {
    // int_0^P dp / (sigma + i (y + p)) = [arg-like term - (i/2) ln(sigma^2 + u^2)], u = y + p.
    auto real_part = [sigma](double u) {
      if (sigma == 0.0) return u > 0.0 ? 0.5 * kPi : (u < 0.0 ? -0.5 * kPi : 0.0);
      return std::atan(u / sigma);
    };
    const double u0 = y;
    const double u1 = y + P;
    const cplx I = (real_part(u1) - real_part(u0)) -
                   0.5 * kI * std::log((sigma * sigma + u1 * u1) / (sigma * sigma + u0 * u0));
    total += rho0 * I;
  }

  // Tail via p = P / u on (0, 1].
  const ComplexFn tail = [&](double u) {
    const double p = P / u;
    const double r = rho(p);
    if (r == 0.0) return cplx(0.0);
    return r * P / (u * cplx(sigma * u, (y + p) * u));
  };
  total += integrate_finite(tail, 0.0, 1.0, piece).value;
  return total;
}

cplx oriented(const SpectralDensity& rho, cplx s, const QuadConfig& cfg, bool second_sheet) {
  const bool mirror = rho.orientation < 0;
  const cplx z = mirror ? std::conj(s) : s;
  cplx value = cauchy_transform(rho, z, cfg);
  if (second_sheet && z.real() < 0.0) value += 2.0 * kPi * rho.analytic_extension(kI * z);
  return mirror ? std::conj(value) : value;
}

void require_extension(const SpectralDensity& rho) {
  if (!rho.has_extension()) {
    throw std::invalid_argument("second-sheet continuation of density '" + rho.label +
                                "' needs an analytic extension");
  }
}

cplx pole_function(const SpectralDensity& rho, double alpha, double omega, cplx s, const QuadConfig& cfg) {
  return s + alpha * oriented(rho, s - kI * omega, cfg, true);
}

cplx default_seed(const SpectralDensity& rho, double alpha, double omega, const QuadConfig& cfg) {
  const double eps = 1e-6 * std::max(rho.width, std::abs(omega));
  return -alpha * oriented(rho, cplx(eps, -omega), cfg, false);
}

constexpr int kNewtonLimit = 50;

}  // namespace

cplx s_hat(const SpectralDensity& rho, cplx s, const QuadConfig& quad) {
  quad.validate();
  if (!(s.real() > 0.0)) {
    throw std::invalid_argument("s_hat: Re s must be > 0 (use s_hat_second_sheet)");
  }
  return oriented(rho, s, quad, false);
}

cplx s_hat_second_sheet(const SpectralDensity& rho, cplx s, const QuadConfig& quad) {
  quad.validate();
  require_extension(rho);
  return oriented(rho, s, quad, true);
}

cplx c_hat(const SpectralDensity& rho, double alpha, double omega, cplx s, const QuadConfig& quad) {
  if (!(s.real() > 0.0)) throw std::invalid_argument("c_hat: Re s must be > 0");
  if (alpha == 0.0) return 1.0 / s;
  return 1.0 / (s + alpha * oriented(rho, s - kI * omega, quad, false));
}

double markov_rate(const SpectralDensity& rho, double alpha, double omega) {
  const double resonance = rho.orientation >= 0 ? omega : -omega;
  if (resonance < 0.0) return 0.0;
  return 2.0 * kPi * alpha * rho(resonance);
}

double markov_rate(const SpectralDensity& rho, const ModelParams& params) {
  return markov_rate(rho, params.alpha, params.omega);
}

Pole find_pole(const SpectralDensity& rho, double alpha, double omega, std::optional<cplx> s_init,
               const QuadConfig& quad) {
  quad.validate();
  require_extension(rho);
  if (!(alpha > 0.0)) throw std::invalid_argument("find_pole: alpha must be > 0");

  cplx s = s_init ? *s_init : default_seed(rho, alpha, omega, quad);
  cplx F = pole_function(rho, alpha, omega, s, quad);
  for (int it = 1; it <= kNewtonLimit; ++it) {
    // F is analytic, so differentiate along Im s to stay on one side of Re s = 0.
    const double delta = 1e-5 * std::max(std::abs(s), 1e-3 * alpha * density_scale(rho) / rho.width);
    const cplx up = pole_function(rho, alpha, omega, s + kI * delta, quad);
    const cplx down = pole_function(rho, alpha, omega, s - kI * delta, quad);
    const cplx dF = (up - down) / (2.0 * kI * delta);
    if (dF == cplx(0.0) || !std::isfinite(std::abs(dF))) {
      throw NumericalError("find_pole: vanishing derivative at s = " + std::to_string(s.real()) + " + " +
                           std::to_string(s.imag()) + "i");
    }
    const cplx step = F / dF;
    s -= step;
    F = pole_function(rho, alpha, omega, s, quad);
    if (std::abs(F) < 1e-12 && std::abs(step) <= 1e-9 * std::abs(s)) {
      if (s.real() > 1e-10 * std::abs(s)) {
        throw NumericalError("find_pole: root with Re s0 = " + std::to_string(s.real()) +
                             " > 0 violates unitarity; check the kernel");
      }
      return {s, std::abs(F), it};
    }
  }
  throw NumericalError("find_pole: Newton iteration did not converge in " + std::to_string(kNewtonLimit) +
                       " iterations (last |F| = " + std::to_string(std::abs(F)) + ")");
}

Pole find_pole(const SpectralDensity& rho, const ModelParams& params, std::optional<cplx> s_init,
               const QuadConfig& quad) {
  return find_pole(rho, params.alpha, params.omega, s_init, quad);
}

std::vector<Pole> find_poles(const SpectralDensity& rho, const ModelParams& params, const QuadConfig& quad) {
  require_extension(rho);
  const cplx base = default_seed(rho, params.alpha, params.omega, quad);
  const double radius = 0.5 * std::max(std::abs(base), 1e-12);

  std::array<std::optional<Pole>, 8> found;
  detail::parallel_for(found.size(), [&](std::size_t j) {
    const cplx seed = base + std::polar(radius, 2.0 * kPi * static_cast<double>(j) / 8.0);
    try {
      found[j] = find_pole(rho, params.alpha, params.omega, seed, quad);
    } catch (const NumericalError&) {
    }
  });

  std::vector<Pole> poles;
  for (const auto& candidate : found) {
    if (!candidate || std::abs(candidate->s0.imag()) > rho.width) continue;
    const bool duplicate = std::any_of(poles.begin(), poles.end(), [&](const Pole& p) {
      return std::abs(p.s0 - candidate->s0) <= 1e-6 * std::max(std::abs(p.s0), 1e-300);
    });
    if (!duplicate) poles.push_back(*candidate);
  }
  std::sort(poles.begin(), poles.end(), [](const Pole& a, const Pole& b) { return a.s0.real() > b.s0.real(); });
  return poles;
}

BromwichResult bromwich_invert(const SpectralDensity& rho, const ModelParams& params, const TimeGrid& grid,
                               const BromwichOptions& options) {
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("bromwich_invert: tolerance must be > 0");
  options.quad.validate();

  const double alpha = params.alpha;
  const double omega = params.omega;
  const double t_max = grid.t_max();
  const double h = kPi / (2.0 * t_max);
  const double period = 2.0 * kPi / h;  // aliases sit at t + k * period

  // Remove 1/s - alpha S0/(s + a)^3, inverse 1 - alpha S0 t^2 e^{-a t}/2.
  const double S0 = alpha > 0.0 ? vacuum_kernel(0.0, rho, options.quad).real() : 0.0;
  const double a = rho.width;
  const double model_peak = alpha * S0 * 2.0 / (a * a * std::exp(2.0));
  const double alias_scale = 2.0 + model_peak;
  const double sigma0 = std::log(20.0 * alias_scale / options.tolerance) / period;

  auto remainder = [&](cplx s) {
    if (alpha == 0.0) return cplx(0.0);
    const cplx sa = s + a;
    return c_hat(rho, alpha, omega, s, options.quad) - 1.0 / s + alpha * S0 / (sa * sa * sa);
  };

  // R at y_j = j h for j = 0, +-1, +-2, ... grown in blocks until the tail
  // estimate e^{sigma0 t_max} |R| Y / (3 pi) falls below tolerance/10.
  std::vector<cplx> pos{remainder(cplx(sigma0, 0.0))};
  std::vector<cplx> neg{pos[0]};
  const double growth = std::exp(sigma0 * t_max);
  constexpr std::size_t kBlock = 512;
  constexpr std::size_t kMinNodes = 64;
  bool converged = false;
  double tail = 0.0;
  while (!converged && pos.size() < options.max_nodes) {
    const std::size_t first = pos.size();
    std::vector<cplx> up(kBlock);
    std::vector<cplx> down(kBlock);
    detail::parallel_for(2 * kBlock, [&](std::size_t i) {
      const double y = h * static_cast<double>(first + i % kBlock);
      if (i < kBlock) {
        up[i] = remainder(cplx(sigma0, y));
      } else {
        down[i - kBlock] = remainder(cplx(sigma0, -y));
      }
    });
    for (std::size_t i = 0; i < kBlock; ++i) {
      pos.push_back(up[i]);
      neg.push_back(down[i]);
      const std::size_t j = pos.size() - 1;
      if (j < kMinNodes) continue;
      double recent = 0.0;
      for (std::size_t back = 0; back < 8; ++back) {
        recent = std::max(recent, std::abs(pos[j - back]) + std::abs(neg[j - back]));
      }
      tail = growth * recent * (h * static_cast<double>(j)) / (6.0 * kPi);
      if (tail < 0.1 * options.tolerance) {
        converged = true;
        pos.resize(j + 1);
        neg.resize(j + 1);
        break;
      }
    }
  }

  const std::size_t J = pos.size() - 1;
  const double alias = alias_scale * std::exp(-sigma0 * period) / (1.0 - std::exp(-sigma0 * period));

  BromwichResult out;
  out.sigma0 = sigma0;
  out.nodes = 2 * J + 1;
  out.series.grid = grid;
  out.series.method = "bromwich";
  out.series.kernel_label = rho.label;
  out.series.alpha = alpha;
  out.series.omega = omega;
  out.series.values.resize(grid.size());
  out.error_estimate.resize(grid.size());
  const double tail_per_growth = tail / growth;

  detail::parallel_for(grid.size(), [&](std::size_t k) {
    const double t = grid.t(k);
    const cplx rotation = std::polar(1.0, h * t);
    cplx phase = rotation;
    cplx sum = pos[0];
    for (std::size_t j = 1; j <= J; ++j) {
      sum += pos[j] * phase + neg[j] * std::conj(phase);
      phase *= rotation;
    }
    const double e = std::exp(sigma0 * t);
    const cplx r = e * (h / (2.0 * kPi)) * sum;
    out.series.values[k] = 1.0 - 0.5 * alpha * S0 * t * t * std::exp(-a * t) + r;
    // Aliases enter damped by e^{-sigma0 k period} without the e^{sigma0 t}
    // growth; the truncated tail carries it.
    out.error_estimate[k] = alias + e * tail_per_growth;
  });
  out.within_tolerance =
      converged && std::all_of(out.error_estimate.begin(), out.error_estimate.end(),
                               [&](double e) { return e <= options.tolerance; });
  return out;
}

LaplaceAnalysis analyze(const SpectralDensity& rho, const ModelParams& params, const QuadConfig& quad) {
  LaplaceAnalysis out{rho, params};
  out.gamma_markov = markov_rate(rho, params);
  if (rho.has_extension() && params.alpha > 0.0) {
    const Pole pole = find_pole(rho, params, std::nullopt, quad);
    out.pole = pole.s0;
    out.gamma_pole = pole.gamma();
    out.shift = pole.s0.imag();
    out.residual = pole.residual;
  }
  return out;
}

}  // namespace qedv
