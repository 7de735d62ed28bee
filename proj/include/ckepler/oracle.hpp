#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ckepler/analytic.hpp"
#include "ckepler/model.hpp"

namespace ckepler {

enum class FdScheme { FD2, FD2Richardson };

/// Uniform sample grid. The samples are the interior points of a Dirichlet
/// problem whose walls sit one step outside [x_min, x_max].
struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  int points = 0;
  FdScheme scheme = FdScheme::FD2;

  double step() const { return (x_max - x_min) / (points - 1); }
  double x(int i) const { return x_min + i * step(); }
  /// Dirichlet walls.
  double wall_left() const { return x_min - step(); }
  double wall_right() const { return x_max + step(); }

  /// points interior samples of (a, b) with walls at a and b.
  static GridSpec interior(double a, double b, int points,
                           FdScheme scheme = FdScheme::FD2);
};

/// Sampled radial pair. f holds the big component and g the small one,
/// regardless of which letter the parity convention attaches to them.
struct RadialSolution {
  GridSpec grid;
  std::vector<double> f;
  std::vector<double> g;
  double energy = 0.0;
  int nodes = 0;
  double norm = 0.0;
  bool rescaled = false;  ///< overflow guard fired during integration
};

/// k lowest eigenvalues of the second-order radial problem, discretized as
/// a symmetric tridiagonal matrix and solved by Sturm-sequence bisection.
/// Under FD2Richardson the grid and its half-step refinement are combined
/// as (4 e_half - e_full) / 3. Eigenvalues above the continuum edge
/// (0 for Flat, -e for Hyperbolic) are returned with valid = false.
std::vector<SpectrumEntry> fd_eigensolve(const SpaceModel& space,
                                         const ChannelSpec& ch, double e,
                                         double m, const GridSpec& grid, int k);

/// Eigenvector for a previously computed FD eigenvalue (inverse iteration
/// on the same grid); normalized to unit trapezoid norm.
std::vector<double> fd_eigenvector(const SpaceModel& space, const ChannelSpec& ch,
                                   double e, double m, const GridSpec& grid,
                                   double energy);

/// Locate one eigenvalue inside the bracket by two-sided integration with
/// Frobenius-seeded endpoints and bisection on the matching Wronskian.
/// The bracket must contain exactly one sign change.
SpectrumEntry shoot_eigen(const SpaceModel& space, const ChannelSpec& ch,
                          double e, double m, std::pair<double, double> bracket);

/// Forward integration from the origin at fixed (not necessarily eigen-)
/// energy; the small component is reconstructed by small_component.
RadialSolution integrate_radial(const SpaceModel& space, const ChannelSpec& ch,
                                double e, double m, double E, const GridSpec& grid);

/// Two-sided profile at fixed energy: Frobenius-seeded sweeps from both ends
/// spliced at the outer classical turning point. Only meaningful near an
/// eigenvalue, where the derivative mismatch at the splice vanishes.
RadialSolution integrate_two_sided(const SpaceModel& space, const ChannelSpec& ch,
                                   double e, double m, double E,
                                   const GridSpec& grid);

/// Small component from the big one through the first-order relation of the
/// channel (4th-order finite differencing of the sampled data).
std::vector<double> small_component(std::span<const double> f_big,
                                    const GridSpec& grid, const SpaceModel& space,
                                    const ChannelSpec& ch, double m);

/// Max-norm residuals of the two first-order radial equations evaluated on
/// the interior samples, relative to max(|f|, |g|).
std::pair<double, double> first_order_residual(const RadialSolution& sol,
                                               const SpaceModel& space,
                                               const ChannelSpec& ch, double e,
                                               double m);

/// Default truncation radius: 50 / sqrt(2 m |E_est|) for Flat, 30 for
/// Hyperbolic, pi for Spherical.
double default_x_max(const SpaceModel& space, double m, double E_est);

}  // namespace ckepler
