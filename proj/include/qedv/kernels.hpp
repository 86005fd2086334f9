#pragma once

// Field-state kernels S(t, s): the two-point function of the initial field
// state smeared with chi on both sides.
//
// A kernel is assembled from up to three parts,
//   S(t, s) = S_stat(t - s) + sum_modes dS_mode(t, s) + S_pair(t, s),
// where the stationary part comes from a spectral density, each squeezed
// mode contributes
//   dS(t, s) = -[F(t) F(s) + c.c.] sinh r cosh r
//              + [conj(F(t)) F(s) + c.c.] sinh^2 r
// for a mode function F(t), and S_pair is an arbitrary user callback.
// Evaluators are immutable and safe to call concurrently.

#include "qedv/atom.hpp"
#include "qedv/density.hpp"
#include "qedv/quad.hpp"

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qedv {

using CVec3 = Eigen::Vector3cd;

/// Mode function F(t) with the two squeeze weights.
struct SqueezeMode {
  std::function<cplx(double)> mode;
  double pair_weight = 0.0;    // sinh r cosh r
  double number_weight = 0.0;  // sinh^2 r

  cplx delta(cplx f_t, cplx f_s) const;
};

class KernelEvaluator {
 public:
  using LagFn = std::function<cplx(double)>;
  using PairFn = std::function<cplx(double, double)>;

  KernelEvaluator() = default;

  static KernelEvaluator from_lag(LagFn lag, std::string label);
  static KernelEvaluator from_pair(PairFn pair, std::string label);

  /// Copy with an additional squeezed mode; the result is non-stationary.
  KernelEvaluator with_mode(SqueezeMode mode, std::string label) const;

  cplx operator()(double t, double s) const;

  /// True iff S(t, s) depends on t - s only.
  bool stationary() const { return !pair_ && modes_.empty(); }
  const std::string& label() const { return label_; }

  bool has_lag() const { return static_cast<bool>(lag_); }
  /// Stationary part S_stat(tau); zero if absent.
  cplx lag(double tau) const { return lag_ ? lag_(tau) : cplx(0.0); }
  const std::vector<SqueezeMode>& modes() const { return modes_; }
  const PairFn& pair() const { return pair_; }

 private:
  LagFn lag_;
  std::vector<SqueezeMode> modes_;
  PairFn pair_;
  std::string label_;
};

/// int_0^inf rho(p) e^{-i p tau} dp (conjugated for a mirrored density).
cplx vacuum_kernel(double tau, const SpectralDensity& rho, const QuadConfig& cfg);

/// Stationary evaluator for rho. The absolute quadrature tolerance is tied
/// to the density's own scale so that relative accuracy holds for any alpha.
KernelEvaluator make_vacuum_kernel(const SpectralDensity& rho, const QuadConfig& cfg = {});

/// Wavepacket f(p) of the photon pairs (a complex vector field; only its
/// transverse part couples), together with the momentum box it lives in.
/// F(t) is integrated with a tensor Gauss-Legendre rule of
/// 10 * panels_per_axis nodes per axis over center +- half_width.
struct WavePacket {
  std::function<CVec3(const Vec3&)> f;
  Vec3 center = Vec3::Zero();
  double half_width = 0.0;
  int panels_per_axis = 4;
};

/// Gaussian packet amplitude sqrt(2|q|) (2 pi sigma^2)^{-3/2}
/// exp(-|p - q|^2 / (2 sigma^2)) d, a nascent delta at q. As sigma -> 0 its
/// mode function tends to amplitude (d . chi(q)) e^{-i |q| t}, the
/// concentrated limit.
WavePacket gaussian_wavepacket(const Vec3& q, const CVec3& d, double sigma, double amplitude = 1.0);

struct SqueezeParams {
  double r = 0.0;
  Vec3 q = Vec3::UnitX();
  CVec3 d = CVec3(0.0, 0.0, 1.0);
  /// Scalar amplitude of the concentrated limit, m = amplitude * (d . chi(q)).
  double amplitude = 1.0;
  std::optional<WavePacket> wavepacket;

  SqueezeParams() = default;
  /// Normalizes d to unit length; throws if |d . q| > 1e-10 |q| or d = 0.
  SqueezeParams(double r, const Vec3& q, const CVec3& d, double amplitude = 1.0,
                std::optional<WavePacket> wavepacket = std::nullopt);
};

/// Mode function of the general wavepacket form,
///   F(t) = int d^3p / sqrt(2|p|) (P_T f(p) . chi(p)) e^{-i |p| t}.
/// The momentum nodes are precomputed once.
SqueezeMode squeeze_mode_general(const SqueezeParams& params, const SmearingFunction& chi);

/// Mode function of the concentrated form, F(t) = m e^{-i |q| t}.
SqueezeMode squeeze_mode_concentrated(const SqueezeParams& params, const SmearingFunction& chi);

/// dS(t, s) of the general form. Throws std::invalid_argument without a
/// wavepacket.
cplx squeezed_delta_general(double t, double s, const SqueezeParams& params,
                            const SmearingFunction& chi);

/// dS(t, s) in the concentrated-wavepacket limit.
cplx squeezed_delta_concentrated(double t, double s, const SqueezeParams& params,
                                 const SmearingFunction& chi);

enum class FieldState { vacuum, squeezed_general, squeezed_concentrated, custom };

struct KernelSpec {
  FieldState state = FieldState::vacuum;
  /// Vacuum part (vacuum and squeezed states) or the custom stationary kernel.
  std::optional<SpectralDensity> density;
  std::optional<SmearingFunction> chi;
  std::optional<SqueezeParams> squeeze;
  /// Custom states may instead give S(t, s) directly.
  std::optional<KernelEvaluator::PairFn> custom_pair;
  QuadConfig quad;
};

/// Throws ConfigError when the state's parameters are incomplete.
KernelEvaluator make_kernel(const KernelSpec& spec);

}  // namespace qedv
