#pragma once

// Two-level atom: hydrogen 1S/2P orbitals, transition frequency and the
// momentum-space smearing function chi_i(p) that couples the transition to
// the field.

#include <Eigen/Core>

#include <functional>
#include <string>

namespace qedv {

using Vec3 = Eigen::Vector3d;

/// Coupling constant and transition frequency, both dimensionless.
struct ModelParams {
  double alpha = 0.0;
  double omega = 0.0;

  ModelParams() = default;
  /// alpha >= 0 and omega >= 0 (alpha = 0 is the decoupled limit).
  ModelParams(double alpha, double omega);

  /// 2P -> 1S of hydrogen: omega = (3/8) alpha^2.
  static ModelParams hydrogen_2p1s(double alpha);
};

/// omega = alpha^2 (1/2 - 1/8). Throws std::invalid_argument for alpha <= 0.
double transition_frequency(double alpha);

/// chi_i(p) of the 2P(m=0) -> 1S transition, z being the quantization axis.
/// Both the longitudinal and the transverse term are returned.
Vec3 chi_momentum(const Vec3& p, double alpha);

enum class Orbital { ground, excited };

/// psi_0 = alpha^{3/2}/sqrt(pi) e^{-alpha r},
/// psi_1 = alpha^{5/2}/(4 sqrt(2 pi)) z e^{-alpha r/2}.
double orbital_value(Orbital which, const Vec3& x, double alpha);

/// Momentum-space smearing function p -> chi(p) (real, since the orbitals
/// are real).
struct SmearingFunction {
  std::function<Vec3(const Vec3&)> eval;
  std::string label;

  Vec3 operator()(const Vec3& p) const { return eval(p); }
};

SmearingFunction hydrogen_smearing(double alpha);

/// Transverse projection (1 - p p^T/p^2) v. Returns v unchanged at p = 0.
Vec3 transverse_part(const Vec3& p, const Vec3& v);

}  // namespace qedv
