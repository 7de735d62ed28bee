#include "ckepler/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ckepler {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

Complex branch_root(Complex w, RootBranch branch) {
  Complex s = std::sqrt(w);
  if (branch == RootBranch::NegativeReal && s.real() > 0.0) s = -s;
  return s;
}

/// Shared assembly of the canonical parameters from the exponent triple.
/// two_e_term is +2e_r for the spherical reduction and -2e_r for the
/// hyperbolic one (the sign the coupling enters alpha*beta with).
HeunParams assemble_heun(Complex A, double B, double C, double nu_r,
                         Complex two_e_term, RootBranch branch) {
  HeunParams hp;
  hp.exponents = {A, Complex(B), Complex(C)};
  hp.branch = branch;
  hp.q = (C - B) * (1.0 + 2.0 * A) - nu_r;
  hp.gamma = 2.0 * A + 1.0;
  hp.delta_h = 2.0 * B;
  const Complex S = A + B + C;
  const Complex R = branch_root(
      A * A + B * B + C * C - B - C + two_e_term - nu_r * nu_r / 2.0, branch);
  hp.alpha = S - R;
  hp.beta = S + R;
  return hp;
}

}  // namespace

SpectrumEntry flat_spectrum(const ChannelSpec& ch, double m, double alpha, int n) {
  require(n >= 0, "radial quantum number must be nonnegative");
  require(m > 0.0, "mass must be positive");
  if (alpha <= 0.0)
    throw std::invalid_argument("no bound states for alpha=" +
                                std::to_string(alpha));
  const int nu = ch.nu();
  const int k = ch.delta > 0 ? n + nu + 1 : n + nu;
  require(k >= 1, "level index n + nu must be at least 1 for parity -1");
  SpectrumEntry entry;
  entry.n = n;
  // N is reported as n + j + 1 in every space; the flat denominators
  // n + nu + 1 and n + nu are N + 1/2 and N - 1/2.
  entry.principal_x2 = 2 * n + ch.j2 + 2;
  entry.energy = -m * alpha * alpha / (2.0 * static_cast<double>(k) * k);
  entry.method = Method::ClosedForm;
  entry.valid = true;
  return entry;
}

ConfluentParams flat_confluent_params(const ChannelSpec& ch, double m,
                                      double alpha, double epsilon) {
  require(m > 0.0, "mass must be positive");
  if (epsilon >= 0.0)
    throw std::invalid_argument(
        "epsilon must be negative (bound-state regime)");
  const double A = 1.0 + ch.nu();
  const double c = 2.0 * A;
  const double a = A - alpha * std::sqrt(-m / (2.0 * epsilon));
  return {a, c, A, 0.5};
}

SpectrumEntry s3_free_spectrum(const ChannelSpec& ch, double m, int n) {
  require(n >= 0, "radial quantum number must be nonnegative");
  require(m > 0.0, "mass must be positive");
  const double s = n + ch.nu() + 0.5;  // = n + j + 1
  SpectrumEntry entry;
  entry.n = n;
  entry.principal_x2 = 2 * n + ch.j2 + 2;
  entry.energy = s * s / (2.0 * m);
  entry.method = Method::ClosedForm;
  return entry;
}

HeunParams s3_heun_reduce(double e, int j2, double E, RootBranch branch) {
  require(e >= 0.0, "coupling e must be nonnegative");
  require(j2 >= 1 && j2 % 2 == 1, "j2 must be a positive odd integer");
  const double nu_r = j2 + 1;           // rescaled nu = 2j + 1
  const Complex e_r(0.0, 2.0 * e);      // rescaled coupling 2ie
  const Complex E_r(2.0 * E, 0.0);
  const Complex A = branch_root(E_r - e_r, branch);
  const double B = 1.0 + nu_r / 2.0;
  const double C = nu_r / 2.0;
  return assemble_heun(A, B, C, nu_r, 2.0 * e_r, branch);
}

SpectrumEntry s3_spectrum(double e, int j2, int n) {
  require(n >= 0, "radial quantum number must be nonnegative");
  require(e >= 0.0, "coupling e must be nonnegative");
  require(j2 >= 1 && j2 % 2 == 1, "j2 must be a positive odd integer");
  const int N_x2 = 2 * n + j2 + 2;
  const double N = 0.5 * N_x2;
  SpectrumEntry entry;
  entry.n = n;
  entry.principal_x2 = N_x2;
  entry.energy = -e * e / (2.0 * N * N) + N * N / 2.0;
  entry.method = Method::ClosedForm;
  entry.valid = true;  // the spherical spectrum is purely discrete
  entry.heun_alpha = Complex(j2 + 2.0, 2.0 * e / N);
  entry.heun_beta = Complex(-2.0 * n, 0.0);
  return entry;
}

HeunParams h3_heun_reduce(double e, int j2, double E, RootBranch branch) {
  require(e >= 0.0, "coupling e must be nonnegative");
  require(j2 >= 1 && j2 % 2 == 1, "j2 must be a positive odd integer");
  const double nu_r = j2 + 1;
  const double e_r = 2.0 * e;
  const Complex disc(e_r - 2.0 * E, 0.0);
  const Complex A = -std::sqrt(disc);  // decay at infinity fixes the sign
  const double B = 1.0 + nu_r / 2.0;
  const double C = nu_r / 2.0;
  HeunParams hp = assemble_heun(A, B, C, nu_r, Complex(-2.0 * e_r), branch);
  hp.complex_branch = (disc.real() <= 0.0);
  return hp;
}

SpectrumEntry h3_spectrum(double e, int j2, int n) {
  require(n >= 0, "radial quantum number must be nonnegative");
  require(e > 0.0, "coupling e must be positive");
  require(j2 >= 1 && j2 % 2 == 1, "j2 must be a positive odd integer");
  const int N_x2 = 2 * n + j2 + 2;
  const double N = 0.5 * N_x2;
  SpectrumEntry entry;
  entry.n = n;
  entry.principal_x2 = N_x2;
  entry.energy = -e * e / (2.0 * N * N) - N * N / 2.0;
  entry.method = Method::ClosedForm;
  entry.heun_alpha = Complex(-2.0 * n, 0.0);
  entry.heun_beta = Complex(j2 + 2.0 - 2.0 * e / N, 0.0);
  entry.valid = N * N < e;
  if (!entry.valid)
    entry.notes = "far-end decay exponent N - e/N = " +
                  std::to_string(N - e / N) +
                  " is nonnegative; level is not normalizable (requires N < "
                  "sqrt(e))";
  return entry;
}

int h3_bound_count(double e, int j2) {
  require(e > 0.0, "coupling e must be positive");
  require(j2 >= 1 && j2 % 2 == 1, "j2 must be a positive odd integer");
  int count = 0;
  for (int n = 0;; ++n) {
    const double N = 0.5 * (2 * n + j2 + 2);
    if (N * N >= e) break;
    ++count;
  }
  return count;
}

SpectrumEntry schrodinger_spectrum(const SpaceModel& space, double e, int n) {
  require(n >= 1, "principal quantum number must be at least 1");
  require(e >= 0.0, "coupling e must be nonnegative");
  if (space.kind == SpaceKind::Flat)
    throw std::invalid_argument(
        "no spinless reference spectrum is provided for flat space");
  SpectrumEntry entry;
  entry.n = n;
  entry.principal_x2 = 2 * n;
  entry.method = Method::ClosedForm;
  const double nn = static_cast<double>(n) * n;
  const double coulomb = -e * e / (2.0 * nn);
  const double free_part = (nn - 1.0) / 2.0;
  if (space.kind == SpaceKind::Spherical) {
    entry.energy = coulomb + free_part;
    entry.valid = true;
  } else {
    entry.energy = coulomb - free_part;
    entry.valid = entry.energy >= -e * e / 2.0 && entry.energy <= 0.5 - e;
    if (!entry.valid)
      entry.notes = "outside the discrete range [-e^2/2, 1/2 - e]";
  }
  return entry;
}

FlatLimitGap flat_limit_check(double q_sq, double m, double rho, int j2, int n) {
  const auto conv = to_dimensionless(q_sq, m, rho);
  const SpectrumEntry entry = s3_spectrum(conv.e, j2, n);
  const double curved = conv.energy_unit * entry.energy;
  const double N = entry.principal();
  const double bohr = -m * q_sq * q_sq / (2.0 * N * N);
  return {curved, bohr, std::abs(curved - bohr)};
}

}  // namespace ckepler
