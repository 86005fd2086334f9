#pragma once

// Numerical integration: globally adaptive Gauss-Kronrod for complex
// integrands on finite intervals, and half-line Fourier-type integrals
//   int_0^inf g(p) e^{-i p tau} dp
// for envelopes with declared decay.

#include <complex>
#include <functional>

namespace qedv {

using cplx = std::complex<double>;
using ComplexFn = std::function<cplx(double)>;

enum class TailStrategy { between_zeros_acceleration, truncate_with_bound };

struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  TailStrategy tail_strategy = TailStrategy::between_zeros_acceleration;

  /// Tolerances positive, max_subdivisions >= 8.
  void validate() const;
};

struct QuadResult {
  cplx value;
  double error;
};

/// |value - exact| <= max(abs_tol, rel_tol |value|) in the usual heuristic
/// sense. Throws QuadratureError (carrying the best estimate) when the
/// subdivision budget is exhausted.
QuadResult integrate_finite(const ComplexFn& f, double a, double b, const QuadConfig& cfg);

/// Decay bound of an envelope: for p >= onset,
///   |g(p)| <= constant * p^{-exponent}      (algebraic)
///   |g(p)| <= constant * e^{-exponent p}    (exponential).
struct Decay {
  enum class Kind { undeclared, algebraic, exponential };

  Kind kind = Kind::undeclared;
  double exponent = 0.0;
  double constant = 0.0;
  double onset = 0.0;

  static Decay algebraic(double order, double constant, double onset = 0.0);
  static Decay exponential(double rate, double constant, double onset = 0.0);

  /// Upper bound on int_P^inf |g(p)| dp, valid for P >= onset.
  double tail_bound(double P) const;
  /// Smallest P >= onset with tail_bound(P) <= budget.
  double truncation_point(double budget) const;
};

struct Envelope {
  ComplexFn g;
  Decay decay;
  /// Location of the envelope's main mass; sets the plain/oscillatory switch.
  double peak = 1.0;
};

/// int_0^inf g(p) e^{-i p tau} dp.
///
/// For |tau| * peak < 2 the integral is truncated at the point where the
/// analytic tail bound drops below abs_tol/10 and integrated adaptively.
/// Otherwise the half line is cut into panels between consecutive zeros of
/// the oscillation (width pi/|tau|); the panel partial sums are either run
/// until the tail bound is met (truncate_with_bound) or accelerated with
/// iterated Aitken extrapolation (between_zeros_acceleration).
///
/// Throws std::invalid_argument if the envelope's decay is undeclared or
/// too slow (algebraic order < 2), NumericalError if acceleration does not
/// settle within max_subdivisions panels.
cplx oscillatory_halfline(const Envelope& env, double tau, const QuadConfig& cfg);

}  // namespace qedv
