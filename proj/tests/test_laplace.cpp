#include "qedv/density.hpp"
#include "qedv/errors.hpp"
#include "qedv/kernels.hpp"
#include "qedv/laplace.hpp"
#include "qedv/volterra.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qedv;

namespace {

constexpr double kPi = std::numbers::pi;

template <typename F>
cplx integrate_complex(F f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  const double re = gauss_kronrod<double, 31>::integrate([&](double x) { return f(x).real(); }, a, b, 20, 1e-12);
  const double im = gauss_kronrod<double, 31>::integrate([&](double x) { return f(x).imag(); }, a, b, 20, 1e-12);
  return {re, im};
}

// Laplace transform of the time-domain kernel, int_0^T e^{-st} S(t) dt.
cplx s_hat_by_time_integral(const KernelEvaluator& k, cplx s, double T) {
  return integrate_complex([&](double t) { return std::exp(-s * t) * k.lag(t); }, 0.0, T);
}

// First-sheet Cauchy integral for any s off the cut, split at the near-pole.
cplx s_hat_direct(const SpectralDensity& rho, cplx s, double split, double P) {
  auto f = [&](double p) { return rho(p) / (s + cplx(0.0, p)); };
  return integrate_complex(f, 0.0, split) + integrate_complex(f, split, P);
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += std::log(x[i]), my += std::log(y[i]);
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace

TEST(SHat, RejectsClosedLeftHalfPlane) {
  const SpectralDensity rho = ohmic_density(1.0, 1.0);
  EXPECT_THROW(s_hat(rho, cplx(0.0, 1.0)), std::invalid_argument);
  EXPECT_THROW(s_hat(rho, cplx(-1.0, 0.0)), std::invalid_argument);
}

TEST(SHat, RealArgumentSigns) {
  const SpectralDensity rho = hydrogen_density(1.0);
  for (double s : {0.1, 1.0, 10.0}) {
    const cplx v = s_hat(rho, s);
    EXPECT_GT(v.real(), 0.0);
    EXPECT_LT(v.imag(), 0.0);
  }
}

TEST(SHat, OhmicClosedForm) {
  // The ohmic kernel is S(tau) = 1/(1 + i tau)^2 in closed form.
  const SpectralDensity rho = ohmic_density(1.0, 1.0);
  for (cplx s : {cplx(0.5, 0.0), cplx(2.0, -3.0)}) {
    const cplx oracle = integrate_complex(
        [&](double t) { return std::exp(-s * t) / ((1.0 + cplx(0, t)) * (1.0 + cplx(0, t))); }, 0.0, 200.0);
    EXPECT_NEAR(std::abs(s_hat(rho, s) - oracle), 0.0, 1e-9);
  }
}

TEST(SHat, LargeArgumentAsymptotic) {
  const SpectralDensity rho = hydrogen_density(1.0);
  const double s0 = make_vacuum_kernel(rho).lag(0.0).real();
  for (cplx s : {cplx(1e3, 0.0), cplx(500.0, 800.0)}) {
    EXPECT_NEAR(std::abs(s_hat(rho, s) * s / s0 - 1.0), 0.0, 1e-2);
  }
}

TEST(SHat, TwoRouteIdentity) {
  const SpectralDensity rho = hydrogen_density(1.0);
  const KernelEvaluator k = make_vacuum_kernel(rho);
  for (cplx s : {cplx(0.1, 0.0), cplx(0.3, -0.7), cplx(1.0, 2.0), cplx(4.0, -1.0), cplx(10.0, 5.0)}) {
    const cplx a = s_hat(rho, s);
    const cplx b = s_hat_by_time_integral(k, s, 40.0 / s.real());
    EXPECT_NEAR(std::abs(a - b), 0.0, 1e-6) << "s = " << s;
  }
}

TEST(SHat, MarkovLimitOnTheCut) {
  const SpectralDensity rho = hydrogen_density(1.0);
  for (double p0 : {0.375, 1.0, 3.0}) {
    EXPECT_NEAR(s_hat(rho, cplx(1e-9, -p0)).real() / (kPi * rho(p0)), 1.0, 1e-5);
  }
}

TEST(SecondSheet, AgreesWithFirstSheetOnTheRight) {
  const SpectralDensity rho = hydrogen_density(1.0);
  for (cplx s : {cplx(0.2, -0.5), cplx(1.0, 1.0)}) EXPECT_EQ(s_hat_second_sheet(rho, s), s_hat(rho, s));
}

TEST(SecondSheet, ContinuousAcrossTheCut) {
  const SpectralDensity rho = hydrogen_density(1.0);
  const double eps = 1e-7;
  for (double p0 : {0.375, 2.0}) {
    const cplx right = s_hat(rho, cplx(eps, -p0));
    const cplx left = s_hat_second_sheet(rho, cplx(-eps, -p0));
    EXPECT_NEAR(std::abs(right - left) / std::abs(right), 0.0, 1e-5);
  }
}

TEST(SecondSheet, JumpEqualsTwoPiRho) {
  const SpectralDensity rho = ohmic_density(1.0, 1.0);
  const double eps = 1e-3;
  const double p0 = 1.5;
  const cplx s(-eps, -p0);
  const cplx first = s_hat_direct(rho, s, p0, 80.0);
  const cplx jump = s_hat_second_sheet(rho, s) - first;
  EXPECT_NEAR(std::abs(jump - 2.0 * kPi * rho(p0)), 0.0, 1e-2 * 2.0 * kPi * rho(p0));
  EXPECT_NEAR(std::abs(jump - 2.0 * kPi * rho.analytic_extension(cplx(0.0, 1.0) * s)), 0.0, 1e-7);
}

TEST(SecondSheet, NeedsExtension) {
  const SpectralDensity table = tabulated_density({0.5, 1.0, 2.0, 4.0}, {0.5, 0.4, 0.2, 0.05}, 4.0);
  EXPECT_THROW(s_hat_second_sheet(table, cplx(-0.1, -1.0)), std::invalid_argument);
  EXPECT_THROW(find_pole(table, 0.1, 1.0), std::invalid_argument);
  const LaplaceAnalysis a = analyze(table, ModelParams(0.1, 1.0));
  EXPECT_TRUE(std::isnan(a.gamma_pole));
  EXPECT_NEAR(a.gamma_markov, 2.0 * kPi * 0.1 * 0.4, 1e-12);
}

TEST(Markov, RateFormulaAndLinearity) {
  const SpectralDensity rho = ohmic_density(1.0, 1.0);
  EXPECT_NEAR(markov_rate(rho, 0.01, 1.0), 2.0 * kPi * 0.01 * std::exp(-1.0), 1e-15);
  EXPECT_NEAR(markov_rate(ohmic_density(2.0, 1.0), 0.01, 1.0), 2.0 * markov_rate(rho, 0.01, 1.0), 1e-15);
  EXPECT_EQ(markov_rate(rho, 0.01, 0.0), 0.0);
  EXPECT_EQ(markov_rate(rho.mirrored(), 0.01, 1.0), 0.0);
  EXPECT_NEAR(markov_rate(rho.mirrored(), 0.01, -1.0), markov_rate(rho, 0.01, 1.0), 1e-15);
}

TEST(Pole, SyntheticDensityNearMarkov) {
  const SpectralDensity rho = ohmic_density(1.0, 1.0);
  const Pole pole = find_pole(rho, 0.01, 1.0);
  EXPECT_LT(pole.residual, 1e-12);
  EXPECT_LT(pole.s0.real(), 0.0);
  EXPECT_NEAR(pole.gamma() / 0.023116, 1.0, 0.02);
  EXPECT_NEAR(pole.gamma() / markov_rate(rho, 0.01, 1.0), 1.0, 0.02);
}

TEST(Pole, FirstOrderPerturbation) {
  const SpectralDensity rho = ohmic_density(1.0, 1.0);
  const cplx first = s_hat_second_sheet(rho, cplx(1e-10, -1.0));
  double previous = INFINITY;
  for (double alpha : {1e-2, 1e-3, 1e-4}) {
    const double err = std::abs(find_pole(rho, alpha, 1.0).s0 / alpha + first);
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous / std::abs(first), 1e-3);
}

TEST(Pole, WeakCouplingPower) {
  const SpectralDensity rho = ohmic_density(1.0, 1.0);
  std::vector<double> alphas{0.0025, 0.005, 0.01};
  std::vector<double> gaps;
  for (double a : alphas) gaps.push_back(std::abs(find_pole(rho, a, 1.0).gamma() - markov_rate(rho, a, 1.0)));
  EXPECT_GE(slope(alphas, gaps), 1.8);
}

TEST(Pole, ConjugateConsistency) {
  const std::pair<SpectralDensity, double> cases[] = {{ohmic_density(1.0, 1.0), 1.0},
                                                      {hydrogen_density(0.5), 0.09375}};
  for (const auto& [rho, omega] : cases) {
    const Pole p = find_pole(rho, 0.05, omega);
    const Pole q = find_pole(rho.mirrored(), 0.05, -omega);
    EXPECT_NEAR(std::abs(q.s0 - std::conj(p.s0)), 0.0, 1e-12 * std::abs(p.s0));
  }
}

TEST(Pole, HydrogenPoleNearMarkov) {
  const double alpha = 0.05;
  const SpectralDensity rho = hydrogen_density(alpha);
  const ModelParams params = ModelParams::hydrogen_2p1s(alpha);
  const Pole pole = find_pole(rho, params);
  EXPECT_LT(pole.residual, 1e-12 * alpha);
  EXPECT_NEAR(pole.gamma() / markov_rate(rho, params), 1.0, 1e-2);
}

TEST(Pole, FindPolesIncludesDominantRoot) {
  const SpectralDensity rho = ohmic_density(1.0, 1.0);
  const ModelParams params(0.01, 1.0);
  const std::vector<Pole> poles = find_poles(rho, params);
  ASSERT_FALSE(poles.empty());
  const Pole main = find_pole(rho, params);
  bool found = false;
  for (const Pole& p : poles) found = found || std::abs(p.s0 - main.s0) < 1e-9;
  EXPECT_TRUE(found);
  for (std::size_t i = 1; i < poles.size(); ++i) EXPECT_GE(poles[i - 1].s0.real(), poles[i].s0.real());
}

TEST(Pole, RejectsZeroCoupling) {
  EXPECT_THROW(find_pole(ohmic_density(1.0, 1.0), 0.0, 1.0), std::invalid_argument);
}

TEST(Bromwich, InitialValueAndDecoupledLimit) {
  const SpectralDensity rho = ohmic_density(1.0, 1.0);
  const BromwichResult r = bromwich_invert(rho, ModelParams(0.01, 1.0), TimeGrid(1.0, 50));
  EXPECT_NEAR(std::abs(r.series.values[0] - 1.0), 0.0, 1e-6);
  EXPECT_TRUE(r.within_tolerance);

  const BromwichResult free = bromwich_invert(rho, ModelParams(0.0, 1.0), TimeGrid(1.0, 50));
  for (const cplx& c : free.series.values) EXPECT_NEAR(std::abs(c - 1.0), 0.0, 1e-6);
}

TEST(Bromwich, AgreesWithTimeDomain) {
  const SpectralDensity rho = ohmic_density(1.0, 1.0);
  const ModelParams params(0.05, 1.0);
  const TimeGrid grid(0.05, 1000);
  const BromwichResult r = bromwich_invert(rho, params, grid);
  const AmplitudeSeries s = solve_ide(make_vacuum_kernel(rho), params, grid, Method::gregory4);
  for (std::size_t i = 0; i < grid.size(); i += 10) {
    EXPECT_NEAR(std::abs(r.series.values[i] - s.values[i]), 0.0, 1e-4) << "t = " << grid.t(i);
  }
}
