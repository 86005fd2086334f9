#include "qedv/density.hpp"
#include "qedv/errors.hpp"
#include "qedv/kernels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qedv;

namespace {

constexpr double kPi = std::numbers::pi;

// Brute-force composite Simpson of int_0^P rho(p) e^{-i p tau} dp; n even.
cplx kernel_by_simpson(const SpectralDensity& rho, double tau, double P, int n) {
  const double h = P / n;
  auto f = [&](int k) { return rho(k * h) * std::exp(cplx(0.0, -k * h * tau)); };
  cplx sum = f(0) + f(n);
  for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(k);
  return h / 3.0 * sum;
}

}  // namespace

TEST(Kernels, VacuumHydrogenMatchesBruteForce) {
  const SpectralDensity rho = hydrogen_density(1.0);
  const KernelEvaluator k = make_vacuum_kernel(rho);
  for (double tau : {0.0, 0.7, 3.0, 12.0}) {
    const cplx brute = kernel_by_simpson(rho, tau, 400.0, 800000);
    EXPECT_NEAR(std::abs(k(tau, 0.0) - brute) / std::abs(k(0.0, 0.0)), 0.0, 2e-9) << "tau = " << tau;
  }
}

TEST(Kernels, VacuumOhmicClosedForm) {
  const KernelEvaluator k = make_vacuum_kernel(ohmic_density(1.0, 1.0));
  for (double tau : {0.0, 1.0, 10.0, 100.0}) {
    const cplx exact = 1.0 / (cplx(1.0, tau) * cplx(1.0, tau));
    EXPECT_NEAR(std::abs(k.lag(tau) - exact), 0.0, 1e-10) << "tau = " << tau;
  }
}

TEST(Kernels, StationaryKernelIsHermitianAndBounded) {
  const KernelEvaluator k = make_vacuum_kernel(hydrogen_density(0.5));
  const double s0 = k.lag(0.0).real();
  EXPECT_NEAR(k.lag(0.0).imag(), 0.0, 1e-15);
  for (double tau : {0.1, 1.7, 9.0, 55.0}) {
    EXPECT_NEAR(std::abs(k.lag(-tau) - std::conj(k.lag(tau))), 0.0, 1e-10 * s0);
    EXPECT_LE(std::abs(k.lag(tau)), s0 * (1 + 1e-10));
  }
}

TEST(Kernels, MirroredDensityConjugatesKernel) {
  const SpectralDensity rho = hydrogen_density(1.0);
  const KernelEvaluator k = make_vacuum_kernel(rho);
  const KernelEvaluator m = make_vacuum_kernel(rho.mirrored());
  for (double tau : {0.4, 5.0}) EXPECT_EQ(m.lag(tau), std::conj(k.lag(tau)));
}

TEST(Kernels, ZeroDensityGivesZeroKernel) {
  const KernelEvaluator k = make_vacuum_kernel(ohmic_density(0.0, 1.0));
  EXPECT_EQ(k.lag(1.0), cplx(0.0));
}

TEST(Kernels, PairKernelIsNonStationary) {
  const KernelEvaluator k = KernelEvaluator::from_pair([](double t, double s) { return cplx(t * s); }, "ts");
  EXPECT_FALSE(k.stationary());
  EXPECT_FALSE(k.has_lag());
  EXPECT_EQ(k(2.0, 3.0), cplx(6.0));
}

class Squeezed : public ::testing::Test {
 protected:
  double alpha = 0.5;
  SmearingFunction chi = hydrogen_smearing(alpha);
  Vec3 q{0.5, 0.0, 0.0};
  CVec3 d{0.0, 0.0, 1.0};
};

TEST_F(Squeezed, ZeroSqueezeAddsNothing) {
  const SqueezeParams p(0.0, q, d);
  for (double t : {0.0, 1.0, 7.5}) EXPECT_EQ(squeezed_delta_concentrated(t, 0.3, p, chi), cplx(0.0));
}

TEST_F(Squeezed, OrthogonalPolarizationDecouples) {
  const SqueezeParams p(0.8, q, CVec3(0.0, 1.0, 0.0));
  EXPECT_EQ(squeezed_delta_concentrated(2.0, 0.5, p, chi), cplx(0.0));
}

TEST_F(Squeezed, ConcentratedMatchesClosedForm) {
  const double r = 0.5;
  const SqueezeParams p(r, q, d, 2.0);
  const double m = 2.0 * chi(q).z();
  const double w = q.norm();
  for (double t : {0.0, 1.3}) {
    for (double s : {0.0, 0.4, 2.2}) {
      const double expected = -2.0 * m * m * std::sinh(r) * std::cosh(r) * std::cos(w * (t + s)) +
                              2.0 * m * m * std::sinh(r) * std::sinh(r) * std::cos(w * (t - s));
      EXPECT_NEAR(squeezed_delta_concentrated(t, s, p, chi).real(), expected, 1e-15);
      EXPECT_EQ(squeezed_delta_concentrated(t, s, p, chi).imag(), 0.0);
    }
  }
}

TEST_F(Squeezed, GeneralFormTendsToConcentratedLimit) {
  const double r = 0.4;
  double previous = INFINITY;
  for (double sigma : {0.04, 0.02, 0.01}) {
    SqueezeParams p(r, q, d, 1.0, gaussian_wavepacket(q, d, sigma));
    double err = 0.0;
    for (double t : {0.0, 2.0, 5.0}) {
      err = std::max(err, std::abs(squeezed_delta_general(t, 1.0, p, chi) - squeezed_delta_concentrated(t, 1.0, p, chi)));
    }
    EXPECT_LT(err, previous);
    previous = err;
  }
  const double scale = std::pow(chi(q).z(), 2);
  EXPECT_LT(previous, 1e-2 * scale);
}

TEST_F(Squeezed, ParameterValidation) {
  EXPECT_THROW(SqueezeParams(0.5, q, CVec3(1.0, 0.0, 0.0)), std::invalid_argument);
  EXPECT_THROW(SqueezeParams(0.5, Vec3::Zero(), d), std::invalid_argument);
  EXPECT_THROW(SqueezeParams(0.5, q, CVec3::Zero()), std::invalid_argument);
  const SqueezeParams p(0.5, q, CVec3(0.0, 0.0, 3.0));
  EXPECT_NEAR(p.d.norm(), 1.0, 1e-15);
  EXPECT_THROW(squeezed_delta_general(0.0, 0.0, p, chi), std::invalid_argument);
  WavePacket wide = gaussian_wavepacket(q, d, 0.5);
  EXPECT_THROW(squeeze_mode_general(SqueezeParams(0.5, q, d, 1.0, wide), chi), std::invalid_argument);
}

TEST_F(Squeezed, MakeKernelRequiresCompleteSpec) {
  KernelSpec spec;
  EXPECT_THROW(make_kernel(spec), ConfigError);
  spec.density = hydrogen_density(alpha);
  EXPECT_TRUE(make_kernel(spec).stationary());
  spec.state = FieldState::squeezed_concentrated;
  EXPECT_THROW(make_kernel(spec), ConfigError);
  spec.chi = chi;
  EXPECT_THROW(make_kernel(spec), ConfigError);
  spec.squeeze = SqueezeParams(0.5, q, d);
  const KernelEvaluator k = make_kernel(spec);
  EXPECT_FALSE(k.stationary());
  spec.state = FieldState::squeezed_general;
  EXPECT_THROW(make_kernel(spec), ConfigError);
}

TEST_F(Squeezed, FullKernelIsHermitian) {
  KernelSpec spec;
  spec.state = FieldState::squeezed_concentrated;
  spec.density = hydrogen_density(alpha);
  spec.chi = chi;
  spec.squeeze = SqueezeParams(0.7, q, d, 0.05);
  const KernelEvaluator k = make_kernel(spec);
  for (double t : {0.0, 1.1, 4.0}) {
    for (double s : {0.3, 2.5}) EXPECT_NEAR(std::abs(k(s, t) - std::conj(k(t, s))), 0.0, 1e-14);
  }
}
