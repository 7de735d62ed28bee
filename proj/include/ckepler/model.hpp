#pragma once

#include <utility>

namespace ckepler {

enum class SpaceKind { Flat, Spherical, Hyperbolic };
enum class Endpoint { Origin, FarEnd };

/// Background geometry. The radial domain is (0, inf) for Flat and
/// Hyperbolic and (0, pi) for Spherical; one generic coordinate x stands
/// for the radial variable of all three spaces.
struct SpaceModel {
  SpaceKind kind = SpaceKind::Flat;
  double radius = 1.0;  ///< curvature radius rho; 1 in dimensionless work

  static SpaceModel flat() { return {SpaceKind::Flat, 1.0}; }
  static SpaceModel spherical(double rho = 1.0);
  static SpaceModel hyperbolic(double rho = 1.0);

  /// pi for Spherical, +infinity otherwise.
  double domain_end() const;
  bool in_domain(double x) const;
  const char* name() const;
};

/// One decoupled radial channel: angular momentum j (stored doubled so
/// equality tests stay exact) and the parity label delta = +/-1.
struct ChannelSpec {
  int j2;     ///< 2j; odd and >= 1
  int delta;  ///< parity, +1 or -1

  ChannelSpec(int j2_, int delta_);

  /// nu = j + 1/2, a positive integer.
  int nu() const { return (j2 + 1) / 2; }
  double j() const { return 0.5 * j2; }
};

/// Parameter carrier for the two unit systems. In dimensionless mode
/// (m == 1) the pair (e, E) is authoritative; in dimensionful mode the
/// inputs (m, alpha, epsilon, rho) are, and (e, E) are derived.
struct PhysicalParams {
  double m = 1.0;
  double alpha = 0.0;    ///< dimensionful Coulomb constant q^2
  double e = 0.0;        ///< dimensionless Coulomb constant
  double E = 0.0;        ///< dimensionless energy
  double epsilon = 0.0;  ///< dimensionful energy
  bool dimensionless = true;

  static PhysicalParams make_dimensionless(double e, double E = 0.0);
  static PhysicalParams from_dimensionful(double m, double alpha, double rho,
                                          double epsilon = 0.0);
};

/// Radial profile of the attractive Coulomb interaction: 1/x, cot x or
/// coth x depending on the space. The potential itself is -alpha * shape.
double coulomb_shape(const SpaceModel& space, double x);

/// Potential V(x) of the big-component equation  -f'' + V f = 2 m E f.
/// The coupling e is the dimensionless Coulomb constant (alpha in flat space).
double effective_potential(const SpaceModel& space, const ChannelSpec& ch,
                           double e, double m, double x);

/// Indicial exponents at a regular endpoint, dominant (bound-state) first.
/// Flat/Hyperbolic expose only the origin; their far end is a truncated
/// limit point handled by the numerical solvers.
std::pair<double, double> frobenius_exponents(const SpaceModel& space,
                                              const ChannelSpec& ch,
                                              Endpoint endpoint);

struct DimensionlessCoupling {
  double e;            ///< q^2 m rho
  double energy_unit;  ///< 1 / (m rho^2), hbar = 1
};

/// Convert a dimensionful charge-squared / mass / curvature-radius triple
/// into the dimensionless coupling and the energy unit.
DimensionlessCoupling to_dimensionless(double q_sq, double m, double rho);

}  // namespace ckepler
