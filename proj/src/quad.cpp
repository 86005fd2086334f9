#include "qedv/quad.hpp"

#include "qedv/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace qedv {

namespace {

struct Segment {
  double a;
  double b;
  cplx value;
  double error;
};

struct ByError {
  bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

// 21-point Kronrod rule with embedded 10-point Gauss rule on [a, b].
Segment gauss_kronrod21(const ComplexFn& f, double a, double b) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& x = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss::weights();

  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);

  cplx k = f(mid) * wk[0];
  cplx g = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const cplx sum = f(mid + half * x[i]) + f(mid - half * x[i]);
    k += sum * wk[i];
    if (i % 2 == 1) g += sum * wg[i / 2];
  }
  k *= half;
  g *= half;
  const double err =
      std::max(std::abs(k - g), 2.0 * std::numeric_limits<double>::epsilon() * std::abs(k));
  return {a, b, k, err};
}

QuadConfig scaled_abs(const QuadConfig& cfg, double factor) {
  QuadConfig out = cfg;
  out.abs_tol = cfg.abs_tol * factor;
  return out;
}

// Iterated Aitken delta-squared on a sequence of partial sums.
cplx aitken_accelerate(std::vector<cplx> s, int max_levels) {
  for (int level = 0; level < max_levels && s.size() >= 3; ++level) {
    std::vector<cplx> next(s.size() - 2);
    for (std::size_t j = 0; j + 2 < s.size(); ++j) {
      const cplx d1 = s[j + 1] - s[j];
      const cplx d2 = s[j + 2] - 2.0 * s[j + 1] + s[j];
      const double scale = std::abs(s[j]) + std::abs(s[j + 1]) + std::abs(s[j + 2]);
      if (std::abs(d2) <= 1e3 * std::numeric_limits<double>::epsilon() * scale) {
        next[j] = s[j + 2];
      } else {
        next[j] = s[j] - d1 * d1 / d2;
      }
    }
    s = std::move(next);
  }
  return s.back();
}

constexpr int kAitkenLevels = 8;
constexpr std::size_t kAitkenWindow = 2 * kAitkenLevels + 1;

}  // namespace

void QuadConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw std::invalid_argument("QuadConfig: tolerances must be positive");
  }
  if (max_subdivisions < 8) throw std::invalid_argument("QuadConfig: max_subdivisions must be >= 8");
}

QuadResult integrate_finite(const ComplexFn& f, double a, double b, const QuadConfig& cfg) {
  cfg.validate();
  if (a == b) return {0.0, 0.0};
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("integrate_finite: endpoints must be finite");
  }

  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  std::vector<Segment> settled;  // too narrow to split further
  heap.push(gauss_kronrod21(f, a, b));

  auto totals = [&] {
    std::vector<Segment> all = settled;
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    cplx value = 0.0;
    double error = 0.0;
    for (const auto& s : all) {
      value += s.value;
      error += s.error;
    }
    return QuadResult{value, error};
  };

  cplx value = heap.top().value;
  double error = heap.top().error;
  const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(b - a);
  for (int iter = 0;; ++iter) {
    if (error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) break;
    if (heap.empty() || iter >= cfg.max_subdivisions) {
      const QuadResult best = totals();
      throw QuadratureError("integrate_finite: no convergence on [" + std::to_string(a) + ", " +
                                std::to_string(b) + "] after " +
                                std::to_string(cfg.max_subdivisions) + " subdivisions",
                            best.value, best.error);
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (std::abs(worst.b - worst.a) < min_width) {
      settled.push_back(worst);
      continue;
    }
    const Segment left = gauss_kronrod21(f, worst.a, mid);
    const Segment right = gauss_kronrod21(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum in interval order so the result does not depend on heap layout.
  return totals();
}

Decay Decay::algebraic(double order, double constant, double onset) {
  return {Kind::algebraic, order, constant, onset};
}

Decay Decay::exponential(double rate, double constant, double onset) {
  return {Kind::exponential, rate, constant, onset};
}

double Decay::tail_bound(double P) const {
  P = std::max(P, onset);
  switch (kind) {
    case Kind::algebraic:
      if (P <= 0.0) return std::numeric_limits<double>::infinity();
      return constant / ((exponent - 1.0) * std::pow(P, exponent - 1.0));
    case Kind::exponential:
      return constant / exponent * std::exp(-exponent * P);
    case Kind::undeclared:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

double Decay::truncation_point(double budget) const {
  switch (kind) {
    case Kind::algebraic: {
      const double P = std::pow(constant / ((exponent - 1.0) * budget), 1.0 / (exponent - 1.0));
      return std::max(P, onset);
    }
    case Kind::exponential: {
      const double P = std::log(constant / (exponent * budget)) / exponent;
      return std::max(P, onset);
    }
    case Kind::undeclared:
      break;
  }
  throw std::invalid_argument("Decay: undeclared decay has no truncation point");
}

cplx oscillatory_halfline(const Envelope& env, double tau, const QuadConfig& cfg) {
  cfg.validate();
  const Decay& decay = env.decay;
  if (decay.kind == Decay::Kind::undeclared) {
    throw std::invalid_argument("oscillatory_halfline: envelope decay metadata is undeclared");
  }
  if (decay.kind == Decay::Kind::algebraic && decay.exponent < 2.0) {
    throw std::invalid_argument("oscillatory_halfline: algebraic decay order must be >= 2");
  }
  if (!(decay.exponent > 0.0) || !(decay.constant >= 0.0)) {
    throw std::invalid_argument("oscillatory_halfline: malformed decay metadata");
  }

  const ComplexFn integrand = [&env, tau](double p) {
    return env.g(p) * cplx(std::cos(p * tau), -std::sin(p * tau));
  };
  const double budget = 0.1 * cfg.abs_tol;
  const double abs_tau = std::abs(tau);

  if (abs_tau * env.peak < 2.0) {
    const double P = decay.truncation_point(budget);
    return integrate_finite(integrand, 0.0, P, scaled_abs(cfg, 0.9)).value;
  }

  const double width = std::numbers::pi / abs_tau;
  const double start = std::max(2.0 * env.peak, decay.onset);
  const double head_end = width * std::ceil(start / width);
  const cplx head = integrate_finite(integrand, 0.0, head_end, scaled_abs(cfg, 0.5)).value;
  if (decay.tail_bound(head_end) <= budget) return head;

  const bool accelerate = cfg.tail_strategy == TailStrategy::between_zeros_acceleration;
  const long max_panels =
      accelerate ? cfg.max_subdivisions : 50L * static_cast<long>(cfg.max_subdivisions);
  const QuadConfig panel_cfg = scaled_abs(cfg, 0.01);

  std::vector<cplx> partial;
  cplx running = 0.0;
  cplx previous_estimate = 0.0;
  bool have_previous = false;
  for (long k = 0; k < max_panels; ++k) {
    const double a = head_end + static_cast<double>(k) * width;
    running += integrate_finite(integrand, a, a + width, panel_cfg).value;
    partial.push_back(running);
    if (decay.tail_bound(a + width) <= budget) return head + running;
    if (accelerate && partial.size() >= kAitkenWindow) {
      const std::vector<cplx> window(partial.end() - kAitkenWindow, partial.end());
      const cplx estimate = aitken_accelerate(window, kAitkenLevels);
      const double tol = std::max(budget, cfg.rel_tol * std::abs(head + estimate));
      if (have_previous && std::abs(estimate - previous_estimate) <= tol) return head + estimate;
      previous_estimate = estimate;
      have_previous = true;
    }
  }
  throw NumericalError("oscillatory_halfline: panel sums did not converge after " +
                       std::to_string(max_panels) + " panels (tau = " + std::to_string(tau) + ")");
}

}  // namespace qedv
