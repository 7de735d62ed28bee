#include "ckepler/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ckepler {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_in_domain(const SpaceModel& space, double x) {
  if (!space.in_domain(x))
    throw std::domain_error("radial coordinate x = " + std::to_string(x) +
                            " outside the domain of " + space.name() + " space");
}

}  // namespace

SpaceModel SpaceModel::spherical(double rho) {
  require(rho > 0.0, "curvature radius must be positive");
  return {SpaceKind::Spherical, rho};
}

SpaceModel SpaceModel::hyperbolic(double rho) {
  require(rho > 0.0, "curvature radius must be positive");
  return {SpaceKind::Hyperbolic, rho};
}

double SpaceModel::domain_end() const {
  return kind == SpaceKind::Spherical ? std::numbers::pi
                                      : std::numeric_limits<double>::infinity();
}

bool SpaceModel::in_domain(double x) const {
  return x > 0.0 && x < domain_end();
}

const char* SpaceModel::name() const {
  switch (kind) {
    case SpaceKind::Flat: return "flat";
    case SpaceKind::Spherical: return "spherical";
    case SpaceKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

ChannelSpec::ChannelSpec(int j2_, int delta_) : j2(j2_), delta(delta_) {
  require(j2 >= 1 && j2 % 2 == 1, "j2 must be a positive odd integer");
  require(delta == 1 || delta == -1, "parity must be +1 or -1");
}

PhysicalParams PhysicalParams::make_dimensionless(double e, double E) {
  require(e >= 0.0, "dimensionless Coulomb constant must be nonnegative");
  PhysicalParams p;
  p.e = e;
  p.E = E;
  return p;
}

PhysicalParams PhysicalParams::from_dimensionful(double m, double alpha,
                                                 double rho, double epsilon) {
  require(m > 0.0, "mass must be positive");
  require(alpha >= 0.0, "Coulomb constant must be nonnegative");
  require(rho > 0.0, "curvature radius must be positive");
  const auto conv = to_dimensionless(alpha, m, rho);
  PhysicalParams p;
  p.m = m;
  p.alpha = alpha;
  p.epsilon = epsilon;
  p.e = conv.e;
  p.E = epsilon / conv.energy_unit;
  p.dimensionless = false;
  return p;
}

double coulomb_shape(const SpaceModel& space, double x) {
  check_in_domain(space, x);
  switch (space.kind) {
    case SpaceKind::Flat: return 1.0 / x;
    case SpaceKind::Spherical: return std::cos(x) / std::sin(x);
    case SpaceKind::Hyperbolic: return std::cosh(x) / std::sinh(x);
  }
  return 0.0;
}

double effective_potential(const SpaceModel& space, const ChannelSpec& ch,
                           double e, double m, double x) {
  require(m > 0.0, "mass must be positive");
  check_in_domain(space, x);
  const double nu = ch.nu();
  const double d = ch.delta;
  switch (space.kind) {
    case SpaceKind::Flat:
      return nu * (nu + d) / (x * x) - 2.0 * m * e / x;
    case SpaceKind::Spherical: {
      const double s = std::sin(x);
      return nu * (nu + d * std::cos(x)) / (s * s) -
             2.0 * m * e * std::cos(x) / s;
    }
    case SpaceKind::Hyperbolic: {
      const double s = std::sinh(x);
      return nu * (nu + d * std::cosh(x)) / (s * s) -
             2.0 * m * e * std::cosh(x) / s;
    }
  }
  return 0.0;
}

std::pair<double, double> frobenius_exponents(const SpaceModel& space,
                                              const ChannelSpec& ch,
                                              Endpoint endpoint) {
  const double nu = ch.nu();
  if (endpoint == Endpoint::FarEnd && space.kind != SpaceKind::Spherical)
    throw std::invalid_argument(
        "far endpoint exponents exist only for spherical space; the "
        "noncompact ends are handled by truncation");
  // The centrifugal strength at the origin is nu(nu + delta); at the
  // spherical far end the sign of delta flips.
  const double d = endpoint == Endpoint::Origin ? ch.delta : -ch.delta;
  if (d > 0) return {1.0 + nu, -nu};
  return {nu, 1.0 - nu};
}

DimensionlessCoupling to_dimensionless(double q_sq, double m, double rho) {
  require(q_sq >= 0.0, "charge squared must be nonnegative");
  require(m > 0.0 && rho > 0.0, "mass and curvature radius must be positive");
  return {q_sq * m * rho, 1.0 / (m * rho * rho)};
}

}  // namespace ckepler
