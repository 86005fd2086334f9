#include "qedv/errors.hpp"
#include "qedv/quad.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qedv;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Quad, FiniteIntegralsOfSmoothFunctions) {
  const QuadConfig cfg;
  EXPECT_NEAR(integrate_finite([](double x) { return cplx(x * x * x); }, 0.0, 2.0, cfg).value.real(), 4.0, 1e-13);
  const cplx v = integrate_finite([](double x) { return std::exp(cplx(0.0, x)); }, 0.0, kPi, cfg).value;
  EXPECT_NEAR(v.real(), 0.0, 1e-13);
  EXPECT_NEAR(v.imag(), 2.0, 1e-13);
  EXPECT_EQ(integrate_finite([](double) { return cplx(1.0); }, 1.0, 1.0, cfg).value, cplx(0.0));
}

TEST(Quad, AdaptsToEndpointSingularity) {
  // Plain bisection gains only sqrt(2) per level at the singular end, so
  // the request stays above the bisection floor of 2^-46.
  QuadConfig cfg;
  cfg.rel_tol = 1e-8;
  const QuadResult r = integrate_finite([](double x) { return cplx(1.0 / std::sqrt(x)); }, 0.0, 1.0, cfg);
  EXPECT_NEAR(r.value.real(), 2.0, 2e-8);
  EXPECT_LE(std::abs(r.value.real() - 2.0), r.error);
}

TEST(Quad, BudgetExhaustionCarriesBestEstimate) {
  QuadConfig cfg;
  cfg.max_subdivisions = 8;
  try {
    integrate_finite([](double x) { return cplx(std::sin(1.0 / x)); }, 1e-6, 1.0, cfg);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate.real()));
    EXPECT_GT(e.error_estimate, 0.0);
  }
}

TEST(Quad, ConfigValidation) {
  QuadConfig cfg;
  cfg.rel_tol = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = QuadConfig{};
  cfg.max_subdivisions = 2;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Quad, DecayBoundsAreConsistent) {
  const Decay alg = Decay::algebraic(4.0, 3.0, 1.0);
  const double P = alg.truncation_point(1e-9);
  EXPECT_LE(alg.tail_bound(P), 1e-9 * (1 + 1e-12));
  EXPECT_GE(P, 1.0);
  const Decay ex = Decay::exponential(0.5, 2.0);
  EXPECT_LE(ex.tail_bound(ex.truncation_point(1e-12)), 1e-12 * (1 + 1e-12));
  EXPECT_THROW(Decay{}.truncation_point(1e-3), std::invalid_argument);
}

// int_0^inf e^{-p} e^{-i p tau} dp = 1 / (1 + i tau)
TEST(Quad, HalflineExponentialEnvelope) {
  const Envelope env{[](double p) { return cplx(std::exp(-p)); }, Decay::exponential(1.0, 1.0), 1.0};
  for (TailStrategy strategy : {TailStrategy::between_zeros_acceleration, TailStrategy::truncate_with_bound}) {
    QuadConfig cfg;
    cfg.tail_strategy = strategy;
    for (double tau : {0.0, 0.5, 3.0, -7.0, 40.0}) {
      const cplx exact = 1.0 / cplx(1.0, tau);
      EXPECT_NEAR(std::abs(oscillatory_halfline(env, tau, cfg) - exact), 0.0, 1e-11) << "tau = " << tau;
    }
  }
}

// Re int_0^inf e^{-i p tau} / (1 + p^2) dp = (pi/2) e^{-|tau|}: slow algebraic decay.
TEST(Quad, HalflineAlgebraicEnvelope) {
  const Envelope env{[](double p) { return cplx(1.0 / (1.0 + p * p)); }, Decay::algebraic(2.0, 1.0), 1.0};
  QuadConfig cfg;
  cfg.abs_tol = 1e-10;
  for (double tau : {2.5, 6.0, 15.0}) {
    EXPECT_NEAR(oscillatory_halfline(env, tau, cfg).real(), 0.5 * kPi * std::exp(-tau), 1e-9) << "tau = " << tau;
  }
}

// int_0^inf p e^{-p} e^{-i p tau} dp = 1 / (1 + i tau)^2
TEST(Quad, StrategiesAgree) {
  const Envelope env{[](double p) { return cplx(p * std::exp(-p)); },
                     Decay::exponential(0.5, 2.0 / std::numbers::e), 1.0};
  QuadConfig a;
  QuadConfig b;
  b.tail_strategy = TailStrategy::truncate_with_bound;
  for (double tau : {5.0, 25.0}) {
    const cplx exact = 1.0 / (cplx(1.0, tau) * cplx(1.0, tau));
    EXPECT_NEAR(std::abs(oscillatory_halfline(env, tau, a) - exact), 0.0, 1e-11);
    EXPECT_NEAR(std::abs(oscillatory_halfline(env, tau, b) - exact), 0.0, 1e-11);
  }
}

TEST(Quad, HalflineRejectsBadDecay) {
  Envelope env{[](double) { return cplx(1.0); }, Decay{}, 1.0};
  EXPECT_THROW(oscillatory_halfline(env, 1.0, QuadConfig{}), std::invalid_argument);
  env.decay = Decay::algebraic(1.5, 1.0);
  EXPECT_THROW(oscillatory_halfline(env, 1.0, QuadConfig{}), std::invalid_argument);
}
