#include "ckepler/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckepler {

namespace {

constexpr double kKummerTol = 1e-16;
constexpr double kGaussTol = 1e-14;
constexpr double kHeunTol = 1e-14;
constexpr double kTerminateTol = 1e-10;
constexpr double kNoTerminateTol = 1e-6;

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 &&
         z.real() == std::floor(z.real());
}

/// Coefficients c_0..c_count of the Frobenius solution at z = 0,
/// c_0 = 1. Clearing denominators in the canonical form gives
///   (z^3 - z) F'' + [(gamma+delta_h+ep) z^2 + (delta_h-ep) z - gamma] F'
///   + (alpha beta z - q) F = 0,   ep = alpha+beta-delta_h-gamma+1,
/// whose power-series balance is the three-term recurrence
///   (n+1)(n+gamma) c_{n+1} = [(delta_h-ep) n - q] c_n
///                          + (n-1+alpha)(n-1+beta) c_{n-1}.
std::vector<Complex> heun_coefficients(const HeunParams& hp, int count) {
  const Complex ep = hp.exponent_at_p();
  std::vector<Complex> c(static_cast<size_t>(count) + 1);
  c[0] = 1.0;
  if (count >= 1) c[1] = -hp.q / hp.gamma;
  for (int n = 1; n < count; ++n) {
    const Complex denom =
        static_cast<double>(n + 1) * (static_cast<double>(n) + hp.gamma);
    if (denom == Complex(0.0)) {
      // Resonant exponent difference: the pure power series stops existing
      // at this depth (logarithmic case).
      c.resize(static_cast<size_t>(n) + 1);
      return c;
    }
    c[static_cast<size_t>(n) + 1] =
        (((hp.delta_h - ep) * static_cast<double>(n) - hp.q) * c[n] +
         (static_cast<double>(n - 1) + hp.alpha) *
             (static_cast<double>(n - 1) + hp.beta) * c[n - 1]) /
        denom;
  }
  return c;
}

SeriesReport heun_sum(const HeunParams& hp, Complex z, int budget, bool derivative) {
  if (std::abs(z) >= 1.0)
    throw std::invalid_argument(
        "heun series argument must satisfy |z| < 1 (nearest singularity)");
  if (is_nonpositive_integer(hp.gamma))
    throw std::domain_error(
        "heun series undefined for gamma a nonpositive integer");

  SeriesReport rep;
  if (z == Complex(0.0) && !derivative) {
    rep.value = 1.0;
    return rep;
  }

  const Complex ep = hp.exponent_at_p();
  Complex cm1 = 0.0, c0 = 1.0;  // c_{n-1}, c_n
  Complex sum = derivative ? Complex(0.0) : c0;
  Complex zk = 1.0;  // z^n (value) or z^{n-1} scaled below (derivative)
  double tail = derivative ? 0.0 : 1.0;
  int small_streak = 0;
  int zero_streak = 0;

  for (int n = 0; n < budget; ++n) {
    const Complex denom =
        static_cast<double>(n + 1) * (static_cast<double>(n) + hp.gamma);
    const Complex c1 =
        (((hp.delta_h - ep) * static_cast<double>(n) - hp.q) * c0 +
         (static_cast<double>(n - 1) + hp.alpha) *
             (static_cast<double>(n - 1) + hp.beta) * cm1) /
        denom;
    const Complex term = derivative
                             ? static_cast<double>(n + 1) * c1 * zk
                             : c1 * zk * z;
    sum += term;
    tail = std::abs(term);
    rep.terms_used = n + 2;

    if (c1 == Complex(0.0) && c0 == Complex(0.0)) {
      if (++zero_streak >= 1) {
        rep.truncated = true;
        break;
      }
    } else {
      zero_streak = 0;
    }
    const double scale = std::max(std::abs(sum), 1e-300);
    if (tail <= kHeunTol * scale) {
      if (++small_streak >= 2) break;
    } else {
      small_streak = 0;
    }
    cm1 = c0;
    c0 = c1;
    zk *= z;
    if (n == budget - 1) {
      rep.value = sum;
      rep.tail_bound = tail;
      throw series_error("heun series did not converge within budget", sum,
                         rep.terms_used);
    }
  }
  rep.value = sum;
  rep.tail_bound = tail;
  return rep;
}

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Terminates: return "terminates";
    case Termination::DoesNotTerminate: return "does-not-terminate";
    case Termination::Indeterminate: return "indeterminate";
  }
  return "?";
}

Complex kummer_m(Complex a, Complex c, Complex x, int budget) {
  if (is_nonpositive_integer(c))
    throw std::domain_error("kummer_m undefined for c a nonpositive integer");
  Complex sum = 1.0;
  Complex term = 1.0;
  int small_streak = 0;
  for (int k = 0; k < budget; ++k) {
    term *= (a + static_cast<double>(k)) /
            ((c + static_cast<double>(k)) * static_cast<double>(k + 1)) * x;
    sum += term;
    if (term == Complex(0.0)) return sum;  // polynomial case
    if (std::abs(term) <= kKummerTol * std::max(std::abs(sum), 1e-300)) {
      if (++small_streak >= 2) return sum;
    } else {
      small_streak = 0;
    }
  }
  throw series_error("kummer_m series did not converge within budget", sum,
                     budget);
}

Complex gauss_2f1(Complex a, Complex b, Complex c, Complex y, int budget) {
  if (is_nonpositive_integer(c))
    throw std::domain_error("gauss_2f1 undefined for c a nonpositive integer");
  const bool polynomial = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (!polynomial && std::abs(y) >= 1.0)
    throw std::invalid_argument(
        "gauss_2f1: |y| >= 1 outside the polynomial case is unsupported "
        "(no analytic continuation)");
  Complex sum = 1.0;
  Complex term = 1.0;
  int small_streak = 0;
  for (int k = 0; k < budget; ++k) {
    term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) /
            ((c + static_cast<double>(k)) * static_cast<double>(k + 1)) * y;
    sum += term;
    if (term == Complex(0.0)) return sum;
    if (std::abs(term) <= kGaussTol * std::max(std::abs(sum), 1e-300)) {
      if (++small_streak >= 2) return sum;
    } else {
      small_streak = 0;
    }
  }
  throw series_error("gauss_2f1 series did not converge within budget", sum,
                     budget);
}

SeriesReport heun_local_series(const HeunParams& hp, Complex z, int budget) {
  return heun_sum(hp, z, budget, /*derivative=*/false);
}

SeriesReport heun_local_series_derivative(const HeunParams& hp, Complex z,
                                          int budget) {
  return heun_sum(hp, z, budget, /*derivative=*/true);
}

Termination heun_termination(const HeunParams& hp, int degree) {
  if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
  const auto c = heun_coefficients(hp, degree + 2);
  if (static_cast<int>(c.size()) < degree + 3)
    return Termination::Indeterminate;  // recurrence hit a resonance
  double scale = 0.0;
  for (int k = 0; k <= degree; ++k) scale = std::max(scale, std::abs(c[k]));
  if (scale == 0.0) return Termination::Indeterminate;
  const double t1 = std::abs(c[degree + 1]) / scale;
  const double t2 = std::abs(c[degree + 2]) / scale;
  if (t1 <= kTerminateTol && t2 <= kTerminateTol) return Termination::Terminates;
  if (t1 > kNoTerminateTol || t2 > kNoTerminateTol)
    return Termination::DoesNotTerminate;
  return Termination::Indeterminate;
}

}  // namespace ckepler
