#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ckepler/analytic.hpp"
#include "ckepler/specfun.hpp"

using namespace ckepler;

namespace {

double rel(Complex a, Complex b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace

TEST_CASE("kummer_m reference values") {
  CHECK(kummer_m(Complex(0.7, 0.3), Complex(2.2), Complex(0.0)) == Complex(1.0));
  CHECK(rel(kummer_m(Complex(-1.0), Complex(2.0), Complex(1.0)), Complex(0.5)) < 1e-15);
  CHECK(rel(kummer_m(Complex(1.0), Complex(1.0), Complex(1.0)),
            Complex(std::exp(1.0))) < 1e-14);
  CHECK_THROWS_AS(kummer_m(Complex(1.0), Complex(0.0), Complex(1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(kummer_m(Complex(1.0), Complex(-3.0), Complex(1.0)),
                  std::domain_error);
}

TEST_CASE("kummer_m nonconvergence carries the partial sum") {
  try {
    kummer_m(Complex(1.0), Complex(1.5), Complex(30.0), 5);
    FAIL("expected series_error");
  } catch (const series_error& err) {
    CHECK(err.terms_used() == 5);
    CHECK(std::abs(err.partial_value()) > 0.0);
  }
}

TEST_CASE("kummer transformation M(a,c,x) = e^x M(c-a,c,-x)") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex a(2.0 * u(rng), 1.5 * u(rng));
    const Complex c(2.3 + 1.4 * u(rng), 0.8 * u(rng));
    const Complex x(4.0 * u(rng), 3.0 * u(rng));
    const Complex lhs = kummer_m(a, c, x);
    const Complex rhs = std::exp(x) * kummer_m(c - a, c, -x);
    CHECK(rel(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("gauss_2f1 reference values") {
  CHECK(gauss_2f1(Complex(1.3), Complex(-0.2), Complex(0.9), Complex(0.0)) ==
        Complex(1.0));
  // 2F1(1,1;2;y) = -log(1-y)/y
  CHECK(rel(gauss_2f1(Complex(1), Complex(1), Complex(2), Complex(0.5)),
            Complex(-std::log(0.5) / 0.5)) < 1e-13);
  // degree-1 polynomial
  const Complex b(1.7, 0.4), c(2.5, -0.3), y(3.0, 1.0);
  CHECK(rel(gauss_2f1(Complex(-1.0), b, c, y), Complex(1.0) - b * y / c) < 1e-14);
  CHECK_THROWS_AS(gauss_2f1(Complex(0.5), Complex(0.5), Complex(1.5), Complex(1.2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(gauss_2f1(Complex(0.5), Complex(0.5), Complex(-2.0), Complex(0.1)),
                  std::domain_error);
}

TEST_CASE("gauss_2f1 polynomial case works outside the unit disk") {
  // 2F1(-2, b; c; y) = 1 - 2by/c + b(b+1)y^2/(c(c+1))
  const double b = 1.5, c = 2.5, y = 3.0;
  const double exact = 1.0 - 2.0 * b * y / c + b * (b + 1.0) * y * y / (c * (c + 1.0));
  CHECK(rel(gauss_2f1(Complex(-2.0), Complex(b), Complex(c), Complex(y)),
            Complex(exact)) < 1e-14);
}

TEST_CASE("heun series normalization and first coefficient") {
  // free spherical reduction at the lowest level: q = -6, gamma = 4
  const HeunParams hp = s3_heun_reduce(0.0, 1, 1.125);
  CHECK(hp.q == Complex(-6.0));
  CHECK(hp.gamma == Complex(4.0));
  CHECK(heun_local_series(hp, Complex(0.0)).value == Complex(1.0));
  // c1 = -q/gamma
  CHECK(rel(heun_local_series_derivative(hp, Complex(0.0)).value, Complex(1.5)) <
        1e-14);
}

TEST_CASE("heun series derivative matches a central difference") {
  const double E = s3_spectrum(2.0, 1, 0).energy;
  const HeunParams hp = s3_heun_reduce(2.0, 1, E, RootBranch::NegativeReal);
  const double h = 1e-5;
  const Complex fd = (heun_local_series(hp, Complex(0.2 + h)).value -
                      heun_local_series(hp, Complex(0.2 - h)).value) /
                     (2.0 * h);
  const Complex an = heun_local_series_derivative(hp, Complex(0.2)).value;
  CHECK(std::abs(fd - an) < 1e-6);
}

TEST_CASE("heun series argument and parameter guards") {
  const HeunParams hp = s3_heun_reduce(0.0, 1, 1.125);
  CHECK_THROWS_AS(heun_local_series(hp, Complex(1.0)), std::invalid_argument);
  // the hyperbolic n=1 point has gamma = -12: the power series does not exist
  const double E1 = h3_spectrum(10.0, 1, 1).energy;
  const HeunParams res = h3_heun_reduce(10.0, 1, E1, RootBranch::NegativeReal);
  CHECK(res.gamma == Complex(-12.0));
  CHECK_THROWS_AS(heun_local_series(res, Complex(0.2)), std::domain_error);
}

TEST_CASE("free-particle reduction agrees with the gauss function") {
  // With no Coulomb term the singularity structure collapses to the
  // hypergeometric one: on the principal branch the local solution is
  // exactly (1+z)^(-2a) 2F1(a, s+1; 2s+1; 4z/(1+z)^2) with s = n+nu+1/2
  // and a = nu+1/2+s (quadratic transformation through y = (z+1)^2/(4z)).
  for (int n : {0, 1, 2}) {
    const double nu = 1.0;
    const double s = n + nu + 0.5;
    const double a = nu + 0.5 + s;
    const double E = s3_free_spectrum(ChannelSpec(1, +1), 1.0, n).energy;
    const HeunParams hp = s3_heun_reduce(0.0, 1, E);
    for (int i = 1; i <= 10; ++i) {
      const double z = 0.05 * i;
      const double w = 4.0 * z / ((1.0 + z) * (1.0 + z));
      const Complex closed =
          std::pow(Complex(1.0 + z), -2.0 * a) *
          gauss_2f1(Complex(a), Complex(s + 1.0), Complex(2.0 * s + 1.0),
                    Complex(w));
      const Complex F = heun_local_series(hp, Complex(z)).value;
      CHECK(rel(F, closed) < 1e-10);
    }
  }
}

TEST_CASE("termination statuses at closed-form points") {
  // coupling off: genuine polynomials of degree 2n on the quantization branch
  for (int n = 0; n <= 3; ++n) {
    const double E = s3_spectrum(0.0, 1, n).energy;
    const HeunParams hp = s3_heun_reduce(0.0, 1, E, RootBranch::NegativeReal);
    CHECK(heun_termination(hp, 2 * n) == Termination::Terminates);
  }
  // coupling on: the single closed-form condition does not close the series
  const double E0 = s3_spectrum(2.0, 1, 0).energy;
  CHECK(heun_termination(s3_heun_reduce(2.0, 1, E0, RootBranch::NegativeReal), 0) ==
        Termination::DoesNotTerminate);
  CHECK(heun_termination(s3_heun_reduce(2.0, 1, E0 + 0.01, RootBranch::NegativeReal),
                         0) == Termination::DoesNotTerminate);
  const double Eh = h3_spectrum(10.0, 1, 0).energy;
  CHECK(heun_termination(h3_heun_reduce(10.0, 1, Eh, RootBranch::NegativeReal), 0) ==
        Termination::DoesNotTerminate);
}

TEST_CASE("trivially terminating parameters") {
  HeunParams hp;
  hp.q = 0.0;
  hp.alpha = 0.0;
  hp.beta = 3.0;
  hp.gamma = 2.0;
  hp.delta_h = 1.0;
  hp.exponents = {Complex(0.0), Complex(0.5), Complex(1.0)};
  CHECK(heun_termination(hp, 0) == Termination::Terminates);
  const auto rep = heun_local_series(hp, Complex(0.4));
  CHECK(rep.truncated);
  CHECK(rep.value == Complex(1.0));
}

TEST_CASE("series reports carry sane metadata") {
  const double E = s3_spectrum(2.0, 1, 1).energy;
  const HeunParams hp = s3_heun_reduce(2.0, 1, E, RootBranch::NegativeReal);
  const auto rep = heun_local_series(hp, Complex(0.4));
  CHECK(rep.terms_used >= 2);
  CHECK(rep.tail_bound >= 0.0);
  CHECK_FALSE(rep.truncated);
  CHECK_THROWS_AS(heun_local_series(hp, Complex(0.9), 12), series_error);
}

TEST_CASE("fuchs relation holds on generated parameters") {
  for (double e : {0.0, 2.0, 10.0}) {
    for (double E : {-12.0, 0.7, 4.0}) {
      for (RootBranch br : {RootBranch::Principal, RootBranch::NegativeReal}) {
        for (const HeunParams& hp :
             {s3_heun_reduce(e, 3, E, br), h3_heun_reduce(e, 3, E, br)}) {
          CHECK(std::abs(hp.exponent_at_p() - 2.0 * hp.exponents.c) < 1e-12);
          CHECK(hp.p == Complex(-1.0));
        }
      }
    }
  }
}
