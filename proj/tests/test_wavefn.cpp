#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ckepler/wavefn.hpp"

using namespace ckepler;

TEST_CASE("node_count on analytic samples") {
  RadialSolution sol;
  sol.grid = GridSpec::interior(0.0, std::numbers::pi, 999);
  sol.f.resize(999);
  for (int i = 0; i < 999; ++i) sol.f[static_cast<size_t>(i)] = std::sin(3.0 * sol.grid.x(i));
  CHECK(node_count(sol) == 2);
  for (auto& v : sol.f) v = std::abs(v) + 1e-3;
  CHECK(node_count(sol) == 0);
}

TEST_CASE("flat ground state: closed-form energy confirmed and refined") {
  const BoundState bs = bound_state(SpaceModel::flat(), ChannelSpec(1, +1), 1.0, 1.0, 0);
  CHECK(bs.entry.method == Method::ClosedForm);
  CHECK(std::abs(bs.entry.energy + 0.125) < 1e-9);
  CHECK(bs.solution.nodes == 0);
  CHECK(bs.solution.norm == doctest::Approx(1.0).epsilon(1e-10));
  // monotone tail
  const auto& f = bs.solution.f;
  for (size_t i = f.size() - 200; i + 1 < f.size(); ++i)
    CHECK(std::abs(f[i + 1]) <= std::abs(f[i]) + 1e-30);
}

TEST_CASE("spherical free level n=1") {
  const BoundState bs =
      bound_state(SpaceModel::spherical(), ChannelSpec(1, +1), 0.0, 1.0, 1);
  CHECK(bs.entry.method == Method::ClosedForm);
  CHECK(std::abs(bs.entry.energy - 3.125) < 1e-9);
  CHECK(bs.solution.nodes == 1);
}

TEST_CASE("spherical Coulomb level falls back to the oracle energy") {
  const BoundState bs =
      bound_state(SpaceModel::spherical(), ChannelSpec(1, +1), 2.0, 1.0, 0);
  CHECK(bs.entry.method == Method::Oracle);
  CHECK(std::abs(bs.entry.energy - 1.0577376842) < 2e-6);
  CHECK(bs.entry.notes.find("not confirmed") != std::string::npos);
  CHECK(bs.solution.nodes == 0);
  CHECK(bs.solution.norm == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("spherical Coulomb excited level carries the right node count") {
  const GridSpec g =
      GridSpec::interior(0.0, std::numbers::pi, 8001, FdScheme::FD2Richardson);
  const BoundState bs =
      bound_state(SpaceModel::spherical(), ChannelSpec(1, +1), 2.0, 1.0, 2, &g);
  CHECK(bs.solution.nodes == 2);
  CHECK(std::abs(bs.entry.energy - 6.5946618431) < 1e-5);
}

TEST_CASE("hyperbolic channel: the single e=10 level and its tail decay") {
  const BoundState bs =
      bound_state(SpaceModel::hyperbolic(), ChannelSpec(1, +1), 10.0, 1.0, 0);
  CHECK(std::abs(bs.entry.energy - (-14.2704534966)) < 2e-6);
  CHECK(bs.solution.nodes == 0);
  // far-end decay rate kappa = sqrt(-2E - 2e)
  const double kappa = std::sqrt(-2.0 * bs.entry.energy - 20.0);
  const auto& g = bs.solution.grid;
  auto at = [&](double x) {
    const int i = static_cast<int>((x - g.x_min) / g.step());
    return std::abs(bs.solution.f[static_cast<size_t>(i)]);
  };
  const double slope = (std::log(at(8.0)) - std::log(at(6.0))) / 2.0;
  CHECK(slope == doctest::Approx(-kappa).epsilon(0.02));
}

TEST_CASE("inadmissible hyperbolic levels are refused") {
  CHECK_THROWS_AS(bound_state(SpaceModel::hyperbolic(), ChannelSpec(1, +1), 10.0,
                              1.0, 2),
                  solver_error);
  // the closed form admits n=1, but the radial problem has no second level
  CHECK_THROWS_AS(bound_state(SpaceModel::hyperbolic(), ChannelSpec(1, +1), 10.0,
                              1.0, 1),
                  solver_error);
}

TEST_CASE("parity -1 flat level") {
  const BoundState bs = bound_state(SpaceModel::flat(), ChannelSpec(1, -1), 1.0, 1.0, 1);
  CHECK(std::abs(bs.entry.energy + 0.125) < 1e-9);
  CHECK(bs.solution.nodes == 1);
  const auto [r1, r2] =
      first_order_residual(bs.solution, SpaceModel::flat(), ChannelSpec(1, -1), 1.0, 1.0);
  CHECK(std::max(r1, r2) < 1e-4);
}

TEST_CASE("small component stays small in the nonrelativistic regime") {
  const BoundState bs =
      bound_state(SpaceModel::spherical(), ChannelSpec(1, +1), 2.0, 1.0, 0);
  double fmax = 0.0, gmax = 0.0;
  for (double v : bs.solution.f) fmax = std::max(fmax, std::abs(v));
  for (double v : bs.solution.g) gmax = std::max(gmax, std::abs(v));
  CHECK(gmax / fmax < 0.2);
}
