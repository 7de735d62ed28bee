#pragma once

#include <complex>

#include "ckepler/errors.hpp"

namespace ckepler {

using Complex = std::complex<double>;

/// Outcome of a truncated power-series evaluation.
struct SeriesReport {
  Complex value{0.0, 0.0};
  int terms_used = 1;
  bool truncated = false;  ///< recurrence coefficients vanished identically
  double tail_bound = 0.0;  ///< magnitude of the last retained term
};

/// Square-root branch policy used by the reductions. Principal is the
/// standard cut; NegativeReal negates roots with positive real part, the
/// convention under which the closed-form quantization is stated.
enum class RootBranch { Principal, NegativeReal };

struct HeunExponents {
  Complex a{0.0}, b{0.0}, c{0.0};
};

/// Parameters of the Heun equation in the canonical form with singular
/// points {0, 1, p = -1, inf}:
///
///   F'' + [gamma/z + delta_h/(z-1) + (alpha+beta-delta_h-gamma+1)/(z-p)] F'
///       + [q/z + (alpha beta - q)/(2(z-1)) - (alpha beta + q)/(2(z+1))] F = 0
///
/// The exponent triple (A, B, C) of the substitution f = z^A (z-1)^B (z+1)^C F
/// that produced the parameters is kept as metadata, along with the root
/// branch that was used.
struct HeunParams {
  Complex p{-1.0, 0.0};
  Complex q{0.0};
  Complex alpha{0.0}, beta{0.0};
  Complex gamma{0.0}, delta_h{0.0};
  HeunExponents exponents;
  RootBranch branch = RootBranch::Principal;
  bool complex_branch = false;  ///< bound-state reality condition failed

  /// Exponent parameter at z = p; equals 2C for every instance produced here.
  Complex exponent_at_p() const {
    return alpha + beta - delta_h - gamma + 1.0;
  }
};

/// Confluent hypergeometric function M(a, c, x) by direct series summation,
/// terms added until they fall below 1e-16 of the partial sum.
Complex kummer_m(Complex a, Complex c, Complex x, int budget = 2000);

/// Gauss hypergeometric 2F1(a, b; c; y). Requires |y| < 1 unless a or b is
/// a nonpositive integer (polynomial case, valid for any y). No analytic
/// continuation is attempted.
Complex gauss_2f1(Complex a, Complex b, Complex c, Complex y, int budget = 4000);

/// Frobenius solution of the canonical Heun form at z = 0, normalized to
/// F(0) = 1, summed inside the unit disk.
SeriesReport heun_local_series(const HeunParams& hp, Complex z, int budget = 400);

/// Derivative of the same local solution (term-wise differentiated series).
SeriesReport heun_local_series_derivative(const HeunParams& hp, Complex z,
                                          int budget = 400);

enum class Termination { Terminates, DoesNotTerminate, Indeterminate };

const char* to_string(Termination t);

/// Tests whether the local series breaks off as a degree-`degree` polynomial
/// by running the recurrence two coefficients past the candidate degree.
Termination heun_termination(const HeunParams& hp, int degree);

}  // namespace ckepler
