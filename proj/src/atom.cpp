#include "qedv/atom.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qedv {

ModelParams::ModelParams(double a, double w) : alpha(a), omega(w) {
  if (!std::isfinite(a) || a < 0.0) throw std::invalid_argument("ModelParams: alpha must be >= 0");
  if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("ModelParams: omega must be >= 0");
}

ModelParams ModelParams::hydrogen_2p1s(double alpha) {
  return ModelParams(alpha, transition_frequency(alpha));
}

double transition_frequency(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("transition_frequency: alpha must be positive");
  return alpha * alpha * (0.5 - 0.125);
}

Vec3 chi_momentum(const Vec3& p, double alpha) {
  const double a2 = alpha * alpha;
  const double d = p.squaredNorm() + 2.25 * a2;
  const double pref = std::numbers::sqrt2 * a2 * a2 * alpha;
  Vec3 out = (4.0 * p.z() / (d * d * d)) * p;
  out.z() -= 1.0 / (d * d);
  return pref * out;
}

double orbital_value(Orbital which, const Vec3& x, double alpha) {
  const double r = x.norm();
  const double pi = std::numbers::pi;
  if (which == Orbital::ground) {
    return std::pow(alpha, 1.5) / std::sqrt(pi) * std::exp(-alpha * r);
  }
  return std::pow(alpha, 2.5) / (4.0 * std::sqrt(2.0 * pi)) * x.z() * std::exp(-0.5 * alpha * r);
}

SmearingFunction hydrogen_smearing(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("hydrogen_smearing: alpha must be positive");
  return {[alpha](const Vec3& p) { return chi_momentum(p, alpha); }, "hydrogen_2p1s"};
}

Vec3 transverse_part(const Vec3& p, const Vec3& v) {
  const double p2 = p.squaredNorm();
  if (p2 == 0.0) return v;
  return v - (p.dot(v) / p2) * p;
}

}  // namespace qedv
