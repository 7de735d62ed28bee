#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ckepler/analytic.hpp"

using namespace ckepler;

TEST_CASE("flat spectrum, both parities") {
  CHECK(flat_spectrum(ChannelSpec(1, +1), 1.0, 1.0, 0).energy ==
        doctest::Approx(-0.125).epsilon(1e-14));
  CHECK(flat_spectrum(ChannelSpec(1, -1), 1.0, 1.0, 1).energy ==
        doctest::Approx(-0.125).epsilon(1e-14));
  CHECK(flat_spectrum(ChannelSpec(1, +1), 1.0, 2.0, 0).energy ==
        doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(flat_spectrum(ChannelSpec(1, -1), 1.0, 1.0, 0).energy ==
        doctest::Approx(-0.5).epsilon(1e-14));
  CHECK_THROWS_AS(flat_spectrum(ChannelSpec(1, +1), 1.0, 0.0, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(flat_spectrum(ChannelSpec(1, +1), 1.0, 1.0, -1),
                  std::invalid_argument);
}

TEST_CASE("flat confluent parameters") {
  auto p = flat_confluent_params(ChannelSpec(1, +1), 1.0, 1.0, -0.125);
  CHECK(p.A == doctest::Approx(2.0));
  CHECK(p.C == doctest::Approx(0.5));
  CHECK(p.c == doctest::Approx(4.0));
  CHECK(p.a == doctest::Approx(0.0).epsilon(1e-12));  // -n with n = 0
  p = flat_confluent_params(ChannelSpec(1, +1), 1.0, 1.0, -1.0 / 18.0);
  CHECK(p.a == doctest::Approx(-1.0).epsilon(1e-12));
  p = flat_confluent_params(ChannelSpec(3, +1), 1.0, 1.0, -1.0 / 32.0);
  CHECK(p.A == doctest::Approx(3.0));
  CHECK(p.a == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_THROWS_AS(flat_confluent_params(ChannelSpec(1, +1), 1.0, 1.0, 0.1),
                  std::invalid_argument);
}

TEST_CASE("free spherical levels and their degeneracy") {
  CHECK(s3_free_spectrum(ChannelSpec(1, +1), 1.0, 0).energy ==
        doctest::Approx(1.125).epsilon(1e-15));
  CHECK(s3_free_spectrum(ChannelSpec(1, +1), 1.0, 1).energy ==
        doctest::Approx(3.125).epsilon(1e-15));
  // same N, same energy
  CHECK(s3_free_spectrum(ChannelSpec(3, -1), 1.0, 0).energy ==
        s3_free_spectrum(ChannelSpec(1, +1), 1.0, 1).energy);
}

TEST_CASE("spherical reduction parameters at the free point") {
  const HeunParams hp = s3_heun_reduce(0.0, 1, 1.125);
  CHECK(hp.exponents.a == Complex(1.5));
  CHECK(hp.exponents.b == Complex(2.0));
  CHECK(hp.exponents.c == Complex(1.0));
  CHECK(hp.gamma == Complex(4.0));
  CHECK(hp.delta_h == Complex(4.0));
  CHECK(hp.q == Complex(-6.0));
  CHECK(std::abs(hp.alpha + hp.beta - Complex(9.0)) < 1e-14);
}

TEST_CASE("spherical spectrum values") {
  CHECK(s3_spectrum(0.0, 1, 0).energy ==
        s3_free_spectrum(ChannelSpec(1, +1), 1.0, 0).energy);
  CHECK(s3_spectrum(2.0, 1, 0).energy ==
        doctest::Approx(-4.0 / 4.5 + 1.125).epsilon(1e-15));
  CHECK(s3_spectrum(1.0, 1, 1).energy == doctest::Approx(3.045).epsilon(1e-15));
  CHECK(s3_spectrum(2.0, 1, 0).principal_x2 == 3);
  CHECK(s3_spectrum(2.0, 1, 0).valid);
}

TEST_CASE("spherical attached parameters and the quantization branch") {
  const SpectrumEntry s = s3_spectrum(2.0, 1, 0);
  REQUIRE(s.heun_alpha.has_value());
  CHECK(std::abs(*s.heun_alpha - Complex(3.0, 8.0 / 3.0)) < 1e-14);
  CHECK(*s.heun_beta == Complex(0.0));
  const HeunParams hp = s3_heun_reduce(2.0, 1, s.energy, RootBranch::NegativeReal);
  CHECK(std::abs(hp.alpha - *s.heun_alpha) < 1e-12);
  CHECK(std::abs(hp.beta - *s.heun_beta) < 1e-12);
  // the two branches select roots of opposite real part
  const HeunParams pr = s3_heun_reduce(2.0, 1, s.energy, RootBranch::Principal);
  CHECK(pr.exponents.a.real() > 0.0);
  CHECK(hp.exponents.a.real() < 0.0);
}

TEST_CASE("hyperbolic reduction parameters") {
  const HeunParams hp = h3_heun_reduce(0.0, 1, -1.125);
  CHECK(hp.exponents.a == Complex(-1.5));
  CHECK(hp.exponents.b == Complex(2.0));
  CHECK(hp.exponents.c == Complex(1.0));
  CHECK(std::abs(hp.q) < 1e-14);
  CHECK(hp.gamma == 2.0 * hp.exponents.a + 1.0);
  CHECK(hp.delta_h == 2.0 * hp.exponents.b);
  CHECK_FALSE(hp.complex_branch);
  CHECK(h3_heun_reduce(1.0, 1, 5.0).complex_branch);
}

TEST_CASE("hyperbolic spectrum and admissibility") {
  const SpectrumEntry a = h3_spectrum(10.0, 1, 0);
  CHECK(a.energy == doctest::Approx(-100.0 / 4.5 - 1.125).epsilon(1e-14));
  CHECK(a.valid);
  const SpectrumEntry b = h3_spectrum(10.0, 1, 1);
  CHECK(b.energy == doctest::Approx(-11.125).epsilon(1e-14));
  CHECK(b.valid);
  const SpectrumEntry c = h3_spectrum(10.0, 1, 2);
  CHECK(c.energy == doctest::Approx(-100.0 / 24.5 - 6.125).epsilon(1e-14));
  CHECK_FALSE(c.valid);
  CHECK_FALSE(c.notes.empty());
  CHECK(*b.heun_alpha == Complex(-2.0));
  CHECK(std::abs(*b.heun_beta - Complex(3.0 - 20.0 / 2.5)) < 1e-14);
}

TEST_CASE("hyperbolic admissible level count") {
  CHECK(h3_bound_count(10.0, 1) == 2);
  CHECK(h3_bound_count(1.0, 1) == 0);
  CHECK(h3_bound_count(100.0, 1) == 9);
  CHECK_THROWS_AS(h3_bound_count(0.0, 1), std::invalid_argument);
}

TEST_CASE("spinless reference spectra") {
  CHECK(schrodinger_spectrum(SpaceModel::spherical(), 2.0, 1).energy ==
        doctest::Approx(-2.0).epsilon(1e-15));
  const SpectrumEntry h = schrodinger_spectrum(SpaceModel::hyperbolic(), 2.0, 1);
  CHECK(h.energy == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(h.valid);  // boundary of the discrete range counts as inside
  CHECK(schrodinger_spectrum(SpaceModel::spherical(), 0.0, 2).energy ==
        doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(schrodinger_spectrum(SpaceModel::flat(), 1.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(schrodinger_spectrum(SpaceModel::spherical(), 1.0, 0),
                  std::invalid_argument);
}

TEST_CASE("flat-space limit of the spherical level") {
  const auto g3 = flat_limit_check(1.0, 1.0, 1e3, 1, 0);
  CHECK(g3.gap == doctest::Approx(1.125e-6).epsilon(1e-10));
  const auto g4 = flat_limit_check(1.0, 1.0, 1e4, 1, 0);
  CHECK(g3.gap / g4.gap == doctest::Approx(100.0).epsilon(1e-8));
  const auto g0 = flat_limit_check(0.0, 1.0, 7.0, 1, 0);
  CHECK(g0.bohr_epsilon == 0.0);
  CHECK(g0.curved_epsilon ==
        doctest::Approx(s3_free_spectrum(ChannelSpec(1, +1), 1.0, 0).energy /
                        (7.0 * 7.0))
            .epsilon(1e-14));
}

TEST_CASE("spherical level monotonicity in n") {
  for (double e : {0.0, 1.0, 5.0}) {
    double prev = -1e300;
    for (int n = 0; n <= 20; ++n) {
      const double E = s3_spectrum(e, 1, n).energy;
      CHECK(E > prev);
      prev = E;
    }
  }
}

TEST_CASE("hyperbolic ordering and threshold behaviour") {
  const double e = 30.0;
  double prev = -1e300;
  for (int n = 0;; ++n) {
    const SpectrumEntry s = h3_spectrum(e, 1, n);
    if (!s.valid) break;
    CHECK(s.energy < -e);
    CHECK(s.energy > prev);
    prev = s.energy;
  }
  // at N = sqrt(e) the closed form touches the continuum edge
  const SpectrumEntry edge = h3_spectrum(2.25, 1, 0);  // N = 1.5, N^2 = e
  CHECK(edge.energy == doctest::Approx(-2.25).epsilon(1e-14));
  CHECK_FALSE(edge.valid);
}

TEST_CASE("parity map nu -> -nu relates the two z-space coefficient functions") {
  // radial coefficient of the parity +1 equation, rescaled variables
  auto coeff_plus = [](double nu, double E, double e, double z) {
    return -nu * nu / ((z * z - 1) * (z * z - 1)) -
           nu * (1 + z * z) / (z * (z * z - 1) * (z * z - 1)) - E / (z * z) -
           e * (z * z + 1) / (z * z * (z * z - 1));
  };
  auto coeff_minus = [](double nu, double E, double e, double z) {
    return -nu * nu / ((z * z - 1) * (z * z - 1)) +
           nu * (1 + z * z) / (z * (z * z - 1) * (z * z - 1)) - E / (z * z) -
           e * (z * z + 1) / (z * z * (z * z - 1));
  };
  for (int i = 1; i <= 20; ++i) {
    const double z = 0.04 * i;
    CHECK(coeff_minus(2.0, 1.3, 0.7, z) ==
          doctest::Approx(coeff_plus(-2.0, 1.3, 0.7, z)).epsilon(1e-14));
  }
}
