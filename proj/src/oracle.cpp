#include "ckepler/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ckepler/detail/ode.hpp"

namespace ckepler {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

struct Tridiag {
  std::vector<double> diag;
  double off = 0.0;  // constant off-diagonal -1/h^2
};

Tridiag assemble(const SpaceModel& space, const ChannelSpec& ch, double e,
                 double m, const GridSpec& grid) {
  Tridiag t;
  const double h = grid.step();
  t.off = -1.0 / (h * h);
  t.diag.resize(static_cast<size_t>(grid.points));
  for (int i = 0; i < grid.points; ++i)
    t.diag[static_cast<size_t>(i)] =
        2.0 / (h * h) + effective_potential(space, ch, e, m, grid.x(i));
  return t;
}

/// Number of eigenvalues of the tridiagonal matrix strictly below sigma
/// (Sturm sequence of LDL^T pivots; IEEE infinities make the recurrence
/// self-healing at zero pivots).
int sturm_count(const Tridiag& t, double sigma) {
  const double off2 = t.off * t.off;
  int count = 0;
  double d = 1.0;
  for (size_t i = 0; i < t.diag.size(); ++i) {
    d = (t.diag[i] - sigma) - (i ? off2 / d : 0.0);
    if (d < 0.0) ++count;
  }
  return count;
}

std::vector<double> sturm_eigenvalues(const Tridiag& t, int k) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double d : t.diag) {
    lo = std::min(lo, d - 2.0 * std::abs(t.off));
    hi = std::max(hi, d + 2.0 * std::abs(t.off));
  }
  std::vector<double> lam(static_cast<size_t>(k));
  double floor_val = lo;
  for (int idx = 0; idx < k; ++idx) {
    double a = floor_val, b = hi;
    for (int it = 0; it < 200 && b - a > 1e-14 + 8 * std::numeric_limits<double>::epsilon() *
                                                      std::max(std::abs(a), std::abs(b));
         ++it) {
      const double mid = 0.5 * (a + b);
      if (sturm_count(t, mid) >= idx + 1)
        b = mid;
      else
        a = mid;
    }
    lam[static_cast<size_t>(idx)] = 0.5 * (a + b);
    floor_val = a;
  }
  return lam;
}

/// Solve (T - sigma I) x = rhs with partial pivoting (dgtsv-style;
/// the fill-in from row swaps lives in du2).
std::vector<double> shifted_solve(const Tridiag& t, double sigma,
                                  std::vector<double> b) {
  const size_t n = t.diag.size();
  std::vector<double> dl(n - 1, t.off), du(n - 1, t.off), du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<double> d(n);
  for (size_t i = 0; i < n; ++i) d[i] = t.diag[i] - sigma;

  for (size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = 1e-290;
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - fact * tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du2[i];
      }
      du[i] = tmp;
      const double tb = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tb - fact * b[i];
    }
  }
  std::vector<double> x(n);
  for (size_t ii = n; ii-- > 0;) {
    double v = b[ii];
    if (ii + 1 < n) v -= du[ii] * x[ii + 1];
    if (ii + 2 < n) v -= du2[ii] * x[ii + 2];
    if (d[ii] == 0.0) d[ii] = 1e-290;
    x[ii] = v / d[ii];
  }
  return x;
}

double continuum_edge(const SpaceModel& space, double e) {
  switch (space.kind) {
    case SpaceKind::Flat: return 0.0;
    case SpaceKind::Hyperbolic: return -e;
    case SpaceKind::Spherical: return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

double trapezoid_norm(std::span<const double> f, double h) {
  double s = 0.0;
  for (size_t i = 0; i + 1 < f.size(); ++i)
    s += 0.5 * h * (f[i] * f[i] + f[i + 1] * f[i + 1]);
  return s;
}

/// 4th-order first derivative of uniformly sampled data.
std::vector<double> deriv4(std::span<const double> y, double h) {
  const size_t n = y.size();
  std::vector<double> dy(n);
  const double c = 1.0 / (12.0 * h);
  dy[0] = c * (-25 * y[0] + 48 * y[1] - 36 * y[2] + 16 * y[3] - 3 * y[4]);
  dy[1] = c * (-3 * y[0] - 10 * y[1] + 18 * y[2] - 6 * y[3] + y[4]);
  for (size_t i = 2; i + 2 < n; ++i)
    dy[i] = c * (y[i - 2] - 8 * y[i - 1] + 8 * y[i + 1] - y[i + 2]);
  dy[n - 2] =
      -c * (-3 * y[n - 1] - 10 * y[n - 2] + 18 * y[n - 3] - 6 * y[n - 4] + y[n - 5]);
  dy[n - 1] = -c * (-25 * y[n - 1] + 48 * y[n - 2] - 36 * y[n - 3] +
                    16 * y[n - 4] - 3 * y[n - 5]);
  return dy;
}

double metric_factor(const SpaceModel& space, double x) {
  switch (space.kind) {
    case SpaceKind::Flat: return 1.0 / x;
    case SpaceKind::Spherical: return 1.0 / std::sin(x);
    case SpaceKind::Hyperbolic: return 1.0 / std::sinh(x);
  }
  return 0.0;
}

struct ShootSetup {
  double x0, x1, xm;
  double lambda;  // 2 m E
};

detail::State2<double> origin_seed(const SpaceModel& space, const ChannelSpec& ch,
                                   double x0) {
  const double p = frobenius_exponents(space, ch, Endpoint::Origin).first;
  return {std::pow(x0, p), p * std::pow(x0, p - 1.0)};
}

detail::State2<double> far_seed(const SpaceModel& space, const ChannelSpec& ch,
                                double e, double m, double x1, double lambda) {
  if (space.kind == SpaceKind::Spherical) {
    const double p = frobenius_exponents(space, ch, Endpoint::FarEnd).first;
    const double s = std::numbers::pi - x1;
    return {std::pow(s, p), -p * std::pow(s, p - 1.0)};
  }
  const double kappa =
      std::sqrt(std::max(effective_potential(space, ch, e, m, x1) - lambda, 1e-12));
  return {1.0, -kappa};
}

double pick_match_point(const SpaceModel& space, const ChannelSpec& ch, double e,
                        double m, double lambda, double x0, double x1) {
  // Splice at the outer classical turning point: both one-sided
  // integrations stay in their stable directions there.
  const int samples = 512;
  const double lo = x0 + 0.02 * (x1 - x0);
  const double hi = x1 - 0.02 * (x1 - x0);
  double best = lo;
  double vmin = std::numeric_limits<double>::infinity();
  double argmin = lo;
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * i / (samples - 1);
    const double v = effective_potential(space, ch, e, m, x);
    if (v <= lambda) best = x;
    if (v < vmin) {
      vmin = v;
      argmin = x;
    }
  }
  if (vmin > lambda) best = argmin;  // no classical region in range
  return std::clamp(best, lo, hi);
}

double match_determinant(const SpaceModel& space, const ChannelSpec& ch, double e,
                         double m, const ShootSetup& s) {
  auto accel = [&](double x, double f, double) {
    return (effective_potential(space, ch, e, m, x) - s.lambda) * f;
  };
  auto left = detail::integrate_adaptive(accel, s.x0, s.xm,
                                         origin_seed(space, ch, s.x0), 1e-12);
  auto right = detail::integrate_adaptive(
      accel, s.x1, s.xm, far_seed(space, ch, e, m, s.x1, s.lambda), 1e-12);
  const double sl = std::max(std::abs(left.y), std::abs(left.dy));
  const double sr = std::max(std::abs(right.y), std::abs(right.dy));
  if (sl == 0.0 || sr == 0.0)
    throw solver_error("shooting produced an identically zero side");
  left.y /= sl;
  left.dy /= sl;
  right.y /= sr;
  right.dy /= sr;
  return left.y * right.dy - right.y * left.dy;
}

void rescale_if_needed(std::vector<double>& samples, detail::State2<double>& st,
                       bool& flag) {
  const double a = std::max(std::abs(st.y), std::abs(st.dy));
  if (a > 1e250) {
    const double s = 1.0 / a;
    for (double& v : samples) v *= s;
    st.y *= s;
    st.dy *= s;
    flag = true;
  }
}

}  // namespace

GridSpec GridSpec::interior(double a, double b, int points, FdScheme scheme) {
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  const double h = (b - a) / (points + 1);
  return {a + h, b - h, points, scheme};
}

double default_x_max(const SpaceModel& space, double m, double E_est) {
  switch (space.kind) {
    case SpaceKind::Spherical: return std::numbers::pi;
    case SpaceKind::Hyperbolic: return 30.0;
    case SpaceKind::Flat: {
      const double scale = std::sqrt(2.0 * m * std::max(std::abs(E_est), 1e-4));
      return std::min(50.0 / scale, 5000.0);
    }
  }
  return 30.0;
}

std::vector<SpectrumEntry> fd_eigensolve(const SpaceModel& space,
                                         const ChannelSpec& ch, double e,
                                         double m, const GridSpec& grid, int k) {
  require(m > 0.0, "mass must be positive");
  require(e >= 0.0, "coupling must be nonnegative");
  require(grid.points >= 100, "grid must have at least 100 points");
  require(k >= 1 && k <= grid.points, "requested level count out of range");
  if (space.kind == SpaceKind::Spherical)
    require(grid.wall_right() <= std::numbers::pi + 1e-9,
            "spherical grid extends past pi");
  require(grid.wall_left() >= -1e-12, "grid extends past the origin");

  std::string warn;
  if (grid.wall_left() > 0.5 * grid.step())
    warn = "left wall offset from the origin; centrifugal wall may be "
           "under-resolved";

  const Tridiag t1 = assemble(space, ch, e, m, grid);
  std::vector<double> lam = sturm_eigenvalues(t1, k);
  if (grid.scheme == FdScheme::FD2Richardson) {
    GridSpec fine = GridSpec::interior(grid.wall_left(), grid.wall_right(),
                                       2 * grid.points + 1, FdScheme::FD2);
    const Tridiag t2 = assemble(space, ch, e, m, fine);
    const std::vector<double> lam2 = sturm_eigenvalues(t2, k);
    for (int i = 0; i < k; ++i)
      lam[static_cast<size_t>(i)] =
          (4.0 * lam2[static_cast<size_t>(i)] - lam[static_cast<size_t>(i)]) / 3.0;
  }

  const double edge = continuum_edge(space, e);
  std::vector<SpectrumEntry> entries;
  entries.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    SpectrumEntry entry;
    entry.n = i;
    entry.principal_x2 = 2 * i + ch.j2 + 2;
    entry.energy = lam[static_cast<size_t>(i)] / (2.0 * m);
    entry.method = Method::Oracle;
    entry.valid = entry.energy < edge;
    if (!entry.valid)
      entry.notes = "above the continuum edge (" + std::to_string(edge) +
                    "); truncation artifact, not a bound level";
    if (!warn.empty()) entry.notes += (entry.notes.empty() ? "" : "; ") + warn;
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<double> fd_eigenvector(const SpaceModel& space, const ChannelSpec& ch,
                                   double e, double m, const GridSpec& grid,
                                   double energy) {
  require(grid.points >= 100, "grid must have at least 100 points");
  const Tridiag t = assemble(space, ch, e, m, grid);
  const double sigma = 2.0 * m * energy * (1.0 + 1e-12) + 1e-13;
  std::vector<double> v(static_cast<size_t>(grid.points), 1.0);
  for (int it = 0; it < 4; ++it) {
    v = shifted_solve(t, sigma, std::move(v));
    double mx = 0.0;
    for (double w : v) mx = std::max(mx, std::abs(w));
    if (mx == 0.0) throw solver_error("inverse iteration collapsed to zero");
    for (double& w : v) w /= mx;
  }
  const double nrm = std::sqrt(trapezoid_norm(v, grid.step()));
  for (double& w : v) w /= nrm;
  for (double w : v) {
    if (std::abs(w) > 1e-8) {
      if (w < 0.0)
        for (double& u : v) u = -u;
      break;
    }
  }
  return v;
}

SpectrumEntry shoot_eigen(const SpaceModel& space, const ChannelSpec& ch,
                          double e, double m, std::pair<double, double> bracket) {
  require(m > 0.0, "mass must be positive");
  auto [E_lo, E_hi] = bracket;
  require(E_lo < E_hi, "bracket must be ordered");

  ShootSetup s{};
  s.x0 = 1e-5;
  const double E_shallow =
      std::abs(E_lo) < std::abs(E_hi) ? E_lo : E_hi;
  s.x1 = space.kind == SpaceKind::Spherical ? std::numbers::pi - 1e-5
                                            : default_x_max(space, m, E_shallow);
  s.lambda = 2.0 * m * 0.5 * (E_lo + E_hi);
  s.xm = pick_match_point(space, ch, e, m, s.lambda, s.x0, s.x1);

  auto W = [&](double E) {
    ShootSetup se = s;
    se.lambda = 2.0 * m * E;
    return match_determinant(space, ch, e, m, se);
  };

  double w_lo = W(E_lo);
  double w_hi = W(E_hi);
  if (w_lo == 0.0) w_lo = -w_hi;  // boundary hit: treat as crossing
  if (w_hi == 0.0) w_hi = -w_lo;
  if (!(w_lo * w_hi < 0.0))
    throw solver_error(
        "bracket contains no eigenvalue: matching determinant has no sign "
        "change");

  double a = E_lo, b = E_hi;
  for (int it = 0; it < 200 && b - a > 1e-10; ++it) {
    const double mid = 0.5 * (a + b);
    const double w = W(mid);
    if (w == 0.0) {
      a = b = mid;
      break;
    }
    if (w * w_lo < 0.0)
      b = mid;
    else {
      a = mid;
      w_lo = w;
    }
  }
  const double E = 0.5 * (a + b);

  // Node count from the assembled profile.
  const GridSpec profile = GridSpec::interior(
      0.0, space.kind == SpaceKind::Spherical ? std::numbers::pi : s.x1, 2001);
  const RadialSolution sol = integrate_two_sided(space, ch, e, m, E, profile);

  SpectrumEntry entry;
  entry.n = sol.nodes;
  entry.principal_x2 = 2 * sol.nodes + ch.j2 + 2;
  entry.energy = E;
  entry.method = Method::Oracle;
  entry.valid =
      space.kind == SpaceKind::Spherical || E < continuum_edge(space, e);
  return entry;
}

RadialSolution integrate_radial(const SpaceModel& space, const ChannelSpec& ch,
                                double e, double m, double E, const GridSpec& grid) {
  require(grid.points >= 5, "grid too coarse");
  const double lambda = 2.0 * m * E;
  auto accel = [&](double x, double f, double) {
    return (effective_potential(space, ch, e, m, x) - lambda) * f;
  };

  RadialSolution sol;
  sol.grid = grid;
  sol.energy = E;
  sol.f.resize(static_cast<size_t>(grid.points));

  detail::State2<double> st = origin_seed(space, ch, grid.x(0));
  sol.f[0] = st.y;
  for (int i = 1; i < grid.points; ++i) {
    st = detail::integrate_adaptive(accel, grid.x(i - 1), grid.x(i), st, 1e-12);
    sol.f[static_cast<size_t>(i)] = st.y;
    rescale_if_needed(sol.f, st, sol.rescaled);
  }

  sol.g = small_component(sol.f, grid, space, ch, m);
  sol.norm = trapezoid_norm(sol.f, grid.step()) + trapezoid_norm(sol.g, grid.step());
  double mx = 0.0;
  for (double v : sol.f) mx = std::max(mx, std::abs(v));
  sol.nodes = detail::count_sign_changes(sol.f, 1e-10 * mx);
  return sol;
}

RadialSolution integrate_two_sided(const SpaceModel& space, const ChannelSpec& ch,
                                   double e, double m, double E,
                                   const GridSpec& grid) {
  require(grid.points >= 5, "grid too coarse");
  const double lambda = 2.0 * m * E;
  auto accel = [&](double x, double f, double) {
    return (effective_potential(space, ch, e, m, x) - lambda) * f;
  };

  const double xm_hint =
      pick_match_point(space, ch, e, m, lambda, grid.x(0), grid.x(grid.points - 1));
  int im = grid.points / 2;
  for (int i = 0; i < grid.points; ++i)
    if (grid.x(i) <= xm_hint) im = i;
  im = std::clamp(im, 2, grid.points - 3);

  RadialSolution sol;
  sol.grid = grid;
  sol.energy = E;
  sol.f.assign(static_cast<size_t>(grid.points), 0.0);

  std::vector<double> left(static_cast<size_t>(im) + 1);
  detail::State2<double> st = origin_seed(space, ch, grid.x(0));
  left[0] = st.y;
  for (int i = 1; i <= im; ++i) {
    st = detail::integrate_adaptive(accel, grid.x(i - 1), grid.x(i), st, 1e-12);
    left[static_cast<size_t>(i)] = st.y;
    rescale_if_needed(left, st, sol.rescaled);
  }

  std::vector<double> right(static_cast<size_t>(grid.points - im));
  detail::State2<double> rt = far_seed(space, ch, e, m, grid.x(grid.points - 1), lambda);
  right[static_cast<size_t>(grid.points - 1 - im)] = rt.y;
  for (int i = grid.points - 2; i >= im; --i) {
    rt = detail::integrate_adaptive(accel, grid.x(i + 1), grid.x(i), rt, 1e-12);
    right[static_cast<size_t>(i - im)] = rt.y;
    rescale_if_needed(right, rt, sol.rescaled);
  }

  const double fr = right[0];
  if (std::abs(fr) < 1e-280)
    throw solver_error("two-sided match failed: right solution vanishes at "
                       "the splice point");
  const double ratio = left[static_cast<size_t>(im)] / fr;
  for (int i = 0; i <= im; ++i) sol.f[static_cast<size_t>(i)] = left[static_cast<size_t>(i)];
  for (int i = im; i < grid.points; ++i)
    sol.f[static_cast<size_t>(i)] = ratio * right[static_cast<size_t>(i - im)];

  sol.g = small_component(sol.f, grid, space, ch, m);
  sol.norm = trapezoid_norm(sol.f, grid.step()) + trapezoid_norm(sol.g, grid.step());
  double mx = 0.0;
  for (double v : sol.f) mx = std::max(mx, std::abs(v));
  sol.nodes = detail::count_sign_changes(sol.f, 1e-10 * mx);
  return sol;
}

std::vector<double> small_component(std::span<const double> f_big,
                                    const GridSpec& grid, const SpaceModel& space,
                                    const ChannelSpec& ch, double m) {
  if (f_big.size() < 5)
    throw std::invalid_argument("grid too coarse for 4th-order differencing");
  require(m > 0.0, "mass must be positive");
  const double nu = ch.nu();
  const std::vector<double> df = deriv4(f_big, grid.step());
  std::vector<double> g(f_big.size());
  for (size_t i = 0; i < f_big.size(); ++i) {
    const double s = metric_factor(space, grid.x(static_cast<int>(i)));
    if (ch.delta > 0)
      g[i] = -(df[i] + nu * s * f_big[i]) / (2.0 * m);
    else
      g[i] = (df[i] - nu * s * f_big[i]) / (2.0 * m);
  }
  return g;
}

std::pair<double, double> first_order_residual(const RadialSolution& sol,
                                               const SpaceModel& space,
                                               const ChannelSpec& ch, double e,
                                               double m) {
  const size_t n = sol.f.size();
  require(n >= 7 && sol.g.size() == n, "solution must carry both components");
  const double h = sol.grid.step();
  const std::vector<double> df = deriv4(sol.f, h);
  const std::vector<double> dg = deriv4(sol.g, h);
  const double nu = ch.nu();
  const double E = sol.energy;

  double scale = 0.0;
  for (size_t i = 0; i < n; ++i)
    scale = std::max({scale, std::abs(sol.f[i]), std::abs(sol.g[i])});
  if (scale == 0.0) return {0.0, 0.0};

  double r1 = 0.0, r2 = 0.0;
  for (size_t i = 2; i + 2 < n; ++i) {
    const double x = sol.grid.x(static_cast<int>(i));
    const double s = metric_factor(space, x);
    const double c = coulomb_shape(space, x);
    double a, b;
    if (ch.delta > 0) {
      a = df[i] + nu * s * sol.f[i] + 2.0 * m * sol.g[i];
      b = dg[i] - nu * s * sol.g[i] - (E + e * c) * sol.f[i];
    } else {
      // parity -1: the big component satisfies the lower equation
      a = dg[i] + nu * s * sol.g[i] + (E + e * c) * sol.f[i];
      b = df[i] - nu * s * sol.f[i] - 2.0 * m * sol.g[i];
    }
    r1 = std::max(r1, std::abs(a));
    r2 = std::max(r2, std::abs(b));
  }
  return {r1 / scale, r2 / scale};
}

}  // namespace ckepler
