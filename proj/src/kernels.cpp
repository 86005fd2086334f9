#include "qedv/kernels.hpp"

#include "qedv/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qedv {

namespace {

CVec3 transverse_part(const Vec3& p, const CVec3& v) {
  const double p2 = p.squaredNorm();
  if (p2 == 0.0) return v;
  const cplx along = p(0) * v(0) + p(1) * v(1) + p(2) * v(2);
  return v - (along / p2) * p.cast<cplx>();
}

cplx dot_real(const CVec3& a, const Vec3& b) { return a(0) * b(0) + a(1) * b(1) + a(2) * b(2); }

cplx unit_phase(double x) { return {std::cos(x), -std::sin(x)}; }  // e^{-ix}

}  // namespace

cplx SqueezeMode::delta(cplx f_t, cplx f_s) const {
  return -2.0 * pair_weight * (f_t * f_s).real() + 2.0 * number_weight * (std::conj(f_t) * f_s).real();
}

KernelEvaluator KernelEvaluator::from_lag(LagFn lag, std::string label) {
  KernelEvaluator k;
  k.lag_ = std::move(lag);
  k.label_ = std::move(label);
  return k;
}

KernelEvaluator KernelEvaluator::from_pair(PairFn pair, std::string label) {
  KernelEvaluator k;
  k.pair_ = std::move(pair);
  k.label_ = std::move(label);
  return k;
}

KernelEvaluator KernelEvaluator::with_mode(SqueezeMode mode, std::string label) const {
  KernelEvaluator k = *this;
  k.modes_.push_back(std::move(mode));
  k.label_ = std::move(label);
  return k;
}

cplx KernelEvaluator::operator()(double t, double s) const {
  cplx value = lag_ ? lag_(t - s) : cplx(0.0);
  for (const auto& m : modes_) value += m.delta(m.mode(t), m.mode(s));
  if (pair_) value += pair_(t, s);
  return value;
}

cplx vacuum_kernel(double tau, const SpectralDensity& rho, const QuadConfig& cfg) {
  const Envelope env{[&rho](double p) { return cplx(rho(p)); }, rho.decay, rho.peak};
  const cplx value = oscillatory_halfline(env, tau, cfg);
  return rho.orientation >= 0 ? value : std::conj(value);
}

KernelEvaluator make_vacuum_kernel(const SpectralDensity& rho, const QuadConfig& cfg) {
  cfg.validate();
  const double scale = rho(rho.peak) * std::max(rho.peak, rho.width);
  if (!(scale > 0.0)) {
    return KernelEvaluator::from_lag([](double) { return cplx(0.0); }, rho.label + "_vacuum");
  }
  QuadConfig scaled = cfg;
  scaled.abs_tol = std::min(cfg.abs_tol, cfg.rel_tol * scale);
  return KernelEvaluator::from_lag(
      [rho, scaled](double tau) { return vacuum_kernel(tau, rho, scaled); }, rho.label + "_vacuum");
}

WavePacket gaussian_wavepacket(const Vec3& q, const CVec3& d, double sigma, double amplitude) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_wavepacket: sigma must be positive");
  const double norm = amplitude * std::sqrt(2.0 * q.norm()) *
                      std::pow(2.0 * std::numbers::pi * sigma * sigma, -1.5);
  WavePacket packet;
  packet.f = [q, d, sigma, norm](const Vec3& p) -> CVec3 {
    return (norm * std::exp(-(p - q).squaredNorm() / (2.0 * sigma * sigma))) * d;
  };
  packet.center = q;
  packet.half_width = 6.0 * sigma;
  packet.panels_per_axis = 4;
  return packet;
}

SqueezeParams::SqueezeParams(double r_, const Vec3& q_, const CVec3& d_, double amplitude_,
                             std::optional<WavePacket> wavepacket_)
    : r(r_), q(q_), d(d_), amplitude(amplitude_), wavepacket(std::move(wavepacket_)) {
  if (!std::isfinite(r)) throw std::invalid_argument("SqueezeParams: r must be finite");
  if (!(q.norm() > 0.0)) throw std::invalid_argument("SqueezeParams: carrier momentum must be nonzero");
  const double dn = d.norm();
  if (!(dn > 0.0)) throw std::invalid_argument("SqueezeParams: polarization must be nonzero");
  d /= dn;
  if (std::abs(dot_real(d, q)) > 1e-10 * q.norm()) {
    throw std::invalid_argument("SqueezeParams: polarization must be orthogonal to q");
  }
}

SqueezeMode squeeze_mode_concentrated(const SqueezeParams& params, const SmearingFunction& chi) {
  const cplx m = params.amplitude * dot_real(params.d, chi(params.q));
  const double q0 = params.q.norm();
  return {[m, q0](double t) { return m * unit_phase(q0 * t); }, std::sinh(params.r) * std::cosh(params.r),
          std::sinh(params.r) * std::sinh(params.r)};
}

SqueezeMode squeeze_mode_general(const SqueezeParams& params, const SmearingFunction& chi) {
  if (!params.wavepacket) {
    throw std::invalid_argument("squeezed_delta_general: squeeze parameters carry no wavepacket");
  }
  const WavePacket& packet = *params.wavepacket;
  if (!(packet.half_width > 0.0) || packet.panels_per_axis < 1 || !packet.f) {
    throw std::invalid_argument("squeezed_delta_general: malformed wavepacket box");
  }
  if (packet.center.norm() <= std::sqrt(3.0) * packet.half_width) {
    throw std::invalid_argument("squeezed_delta_general: wavepacket box must exclude p = 0");
  }

  using gauss = boost::math::quadrature::gauss<double, 10>;
  std::vector<double> offsets;
  std::vector<double> weights;
  const double panel = 2.0 * packet.half_width / packet.panels_per_axis;
  for (int k = 0; k < packet.panels_per_axis; ++k) {
    const double mid = -packet.half_width + (k + 0.5) * panel;
    for (std::size_t i = 0; i < gauss::abscissa().size(); ++i) {
      const double x = 0.5 * panel * gauss::abscissa()[i];
      const double w = 0.5 * panel * gauss::weights()[i];
      offsets.push_back(mid + x);
      weights.push_back(w);
      offsets.push_back(mid - x);
      weights.push_back(w);
    }
  }

  struct Nodes {
    std::vector<double> frequency;
    std::vector<cplx> amplitude;
  };
  auto nodes = std::make_shared<Nodes>();
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    for (std::size_t j = 0; j < offsets.size(); ++j) {
      for (std::size_t k = 0; k < offsets.size(); ++k) {
        const Vec3 p = packet.center + Vec3(offsets[i], offsets[j], offsets[k]);
        const double pn = p.norm();
        const double w = weights[i] * weights[j] * weights[k];
        const cplx h = w * dot_real(transverse_part(p, packet.f(p)), chi(p)) / std::sqrt(2.0 * pn);
        if (h == cplx(0.0)) continue;
        nodes->frequency.push_back(pn);
        nodes->amplitude.push_back(h);
      }
    }
  }

  auto mode = [nodes](double t) {
    cplx sum = 0.0;
    for (std::size_t n = 0; n < nodes->frequency.size(); ++n) {
      sum += nodes->amplitude[n] * unit_phase(nodes->frequency[n] * t);
    }
    return sum;
  };
  return {mode, std::sinh(params.r) * std::cosh(params.r), std::sinh(params.r) * std::sinh(params.r)};
}

cplx squeezed_delta_general(double t, double s, const SqueezeParams& params, const SmearingFunction& chi) {
  const SqueezeMode m = squeeze_mode_general(params, chi);
  return m.delta(m.mode(t), m.mode(s));
}

cplx squeezed_delta_concentrated(double t, double s, const SqueezeParams& params,
                                 const SmearingFunction& chi) {
  const SqueezeMode m = squeeze_mode_concentrated(params, chi);
  return m.delta(m.mode(t), m.mode(s));
}

KernelEvaluator make_kernel(const KernelSpec& spec) {
  switch (spec.state) {
    case FieldState::vacuum:
      if (!spec.density) throw ConfigError("vacuum kernel needs a spectral density");
      return make_vacuum_kernel(*spec.density, spec.quad);

    case FieldState::squeezed_general:
    case FieldState::squeezed_concentrated: {
      if (!spec.density) throw ConfigError("squeezed kernel needs the vacuum spectral density");
      if (!spec.chi) throw ConfigError("squeezed kernel needs the smearing function chi");
      if (!spec.squeeze) throw ConfigError("squeezed kernel needs squeeze parameters");
      const KernelEvaluator vacuum = make_vacuum_kernel(*spec.density, spec.quad);
      if (spec.state == FieldState::squeezed_concentrated) {
        return vacuum.with_mode(squeeze_mode_concentrated(*spec.squeeze, *spec.chi),
                                "squeezed_concentrated");
      }
      if (!spec.squeeze->wavepacket) throw ConfigError("general squeezed kernel needs a wavepacket");
      return vacuum.with_mode(squeeze_mode_general(*spec.squeeze, *spec.chi), "squeezed_general");
    }

    case FieldState::custom:
      if (spec.custom_pair) return KernelEvaluator::from_pair(*spec.custom_pair, "custom_pair");
      if (spec.density) return make_vacuum_kernel(*spec.density, spec.quad);
      throw ConfigError("custom kernel needs a spectral density or a pair function");
  }
  throw ConfigError("unknown field state");
}

}  // namespace qedv
