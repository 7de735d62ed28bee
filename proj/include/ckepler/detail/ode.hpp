#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>

#include "ckepler/errors.hpp"

namespace ckepler::detail {

template <class Scalar>
struct State2 {
  Scalar y{};
  Scalar dy{};
};

inline double mag(double v) { return std::abs(v); }
inline double mag(const std::complex<double>& v) { return std::abs(v); }

/// Adaptive Cash-Karp 4(5) integration of a second-order linear system
/// written as y' = dy, dy' = rhs(x, y, dy), from x0 to x1 (either direction).
/// Error is controlled per step against rtol * (solution scale).
template <class Scalar, class Rhs>
State2<Scalar> integrate_adaptive(Rhs&& accel, double x0, double x1,
                                  State2<Scalar> state, double rtol = 1e-12) {
  if (x0 == x1) return state;
  const double span = std::abs(x1 - x0);
  const double dir = x1 > x0 ? 1.0 : -1.0;
  double h = dir * std::min(span, std::max(1e-8, span / 64.0));
  double x = x0;

  static constexpr double a2 = 0.2, a3 = 0.3, a4 = 0.6, a5 = 1.0, a6 = 0.875;
  static constexpr double b21 = 0.2;
  static constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
  static constexpr double b41 = 0.3, b42 = -0.9, b43 = 1.2;
  static constexpr double b51 = -11.0 / 54.0, b52 = 2.5, b53 = -70.0 / 27.0,
                          b54 = 35.0 / 27.0;
  static constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0,
                          b63 = 575.0 / 13824.0, b64 = 44275.0 / 110592.0,
                          b65 = 253.0 / 4096.0;
  static constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0,
                          c4 = 125.0 / 594.0, c6 = 512.0 / 1771.0;
  static constexpr double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                          d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0,
                          d6 = c6 - 0.25;

  auto deriv = [&](double xx, const State2<Scalar>& s) {
    return State2<Scalar>{s.dy, accel(xx, s.y, s.dy)};
  };
  auto axpy = [](State2<Scalar> s, double w, const State2<Scalar>& k) {
    s.y += w * k.y;
    s.dy += w * k.dy;
    return s;
  };

  int steps = 0;
  while (dir * (x1 - x) > 0.0) {
    if (++steps > 2000000)
      throw solver_error("adaptive integrator exceeded step budget");
    if (dir * (x + h - x1) > 0.0) h = x1 - x;

    const State2<Scalar> k1 = deriv(x, state);
    State2<Scalar> s = axpy(state, h * b21, k1);
    const State2<Scalar> k2 = deriv(x + a2 * h, s);
    s = axpy(axpy(state, h * b31, k1), h * b32, k2);
    const State2<Scalar> k3 = deriv(x + a3 * h, s);
    s = axpy(axpy(axpy(state, h * b41, k1), h * b42, k2), h * b43, k3);
    const State2<Scalar> k4 = deriv(x + a4 * h, s);
    s = axpy(axpy(axpy(axpy(state, h * b51, k1), h * b52, k2), h * b53, k3),
             h * b54, k4);
    const State2<Scalar> k5 = deriv(x + a5 * h, s);
    s = axpy(axpy(axpy(axpy(axpy(state, h * b61, k1), h * b62, k2), h * b63, k3),
                  h * b64, k4),
             h * b65, k5);
    const State2<Scalar> k6 = deriv(x + a6 * h, s);

    State2<Scalar> next = state;
    next.y += h * (c1 * k1.y + c3 * k3.y + c4 * k4.y + c6 * k6.y);
    next.dy += h * (c1 * k1.dy + c3 * k3.dy + c4 * k4.dy + c6 * k6.dy);

    const double err_y =
        mag(h * (d1 * k1.y + d3 * k3.y + d4 * k4.y + d5 * k5.y + d6 * k6.y));
    const double err_dy =
        mag(h * (d1 * k1.dy + d3 * k3.dy + d4 * k4.dy + d5 * k5.dy + d6 * k6.dy));
    const double scale_y = std::max({mag(state.y), mag(next.y), 1e-290});
    const double scale_dy = std::max({mag(state.dy), mag(next.dy), 1e-290});
    const double err = std::max(err_y / scale_y, err_dy / scale_dy);

    if (err <= rtol) {
      x += h;
      state = next;
      const double grow = err > 0.0 ? 0.9 * std::pow(rtol / err, 0.2) : 5.0;
      h *= std::clamp(grow, 0.2, 5.0);
    } else {
      h *= std::max(0.1, 0.9 * std::pow(rtol / err, 0.25));
    }
    if (std::abs(h) < 1e-15 * span)
      throw solver_error("step-size underflow in adaptive integrator");
  }
  return state;
}

/// Sign changes of a sampled function, ignoring |v| < threshold.
inline int count_sign_changes(std::span<const double> v, double threshold) {
  int changes = 0;
  int last = 0;
  for (double x : v) {
    if (std::abs(x) < threshold) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace ckepler::detail
