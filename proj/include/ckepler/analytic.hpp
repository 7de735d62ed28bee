#pragma once

#include <optional>
#include <string>

#include "ckepler/model.hpp"
#include "ckepler/specfun.hpp"

namespace ckepler {

enum class Method { ClosedForm, Oracle };

/// One bound level. N = n + j + 1 is stored doubled (principal_x2) so
/// half-integer arithmetic stays exact on the wire.
struct SpectrumEntry {
  int n = 0;             ///< radial quantum number (node count)
  int principal_x2 = 0;  ///< 2N
  double energy = 0.0;   ///< dimensionless E unless noted otherwise
  Method method = Method::ClosedForm;
  bool valid = true;
  std::string notes;
  std::optional<Complex> heun_alpha;  ///< attached parameter at Coulomb points
  std::optional<Complex> heun_beta;

  double principal() const { return 0.5 * principal_x2; }
};

/// Flat-space Coulomb level: epsilon = -m alpha^2 / (2 (n + nu + 1)^2) for
/// delta = +1 and -m alpha^2 / (2 (n + nu)^2) for delta = -1.
SpectrumEntry flat_spectrum(const ChannelSpec& ch, double m, double alpha, int n);

struct ConfluentParams {
  double a, c;  ///< Kummer parameters
  double A, C;  ///< substitution exponents: f = x^A exp(-C x) M(a, c, x)
};

/// Parameters of the confluent-hypergeometric reduction of the flat bound
/// problem in the scaled variable x = 2 sqrt(-2 m epsilon) r.
ConfluentParams flat_confluent_params(const ChannelSpec& ch, double m,
                                      double alpha, double epsilon);

/// Free particle on the 3-sphere: E = (n + nu + 1/2)^2 / (2m), both parities.
SpectrumEntry s3_free_spectrum(const ChannelSpec& ch, double m, int n);

/// Map the spherical Coulomb problem at energy E onto Heun parameters.
/// Uses the rescaled quantities nu_r = 2j+1, E_r = 2E, e_r = 2ie and the
/// exponent selection A = sqrt(E_r - e_r), B = 1 + nu_r/2, C = nu_r/2.
HeunParams s3_heun_reduce(double e, int j2, double E,
                          RootBranch branch = RootBranch::Principal);

/// Closed-form spherical Coulomb level E = -e^2/(2N^2) + N^2/2, N = n+j+1,
/// with the attached Heun parameters alpha = 2(j+1) + 2ie/N, beta = -2n.
SpectrumEntry s3_spectrum(double e, int j2, int n);

/// Hyperbolic analogue of s3_heun_reduce; A = -sqrt(e_r - E_r) (decay at
/// infinity), e_r = 2e real.
HeunParams h3_heun_reduce(double e, int j2, double E,
                          RootBranch branch = RootBranch::Principal);

/// Closed-form hyperbolic Coulomb level E = -e^2/(2N^2) - N^2/2. Admissible
/// as a bound state only while the far-end decay exponent N - e/N is
/// negative, i.e. N < sqrt(e); inadmissible entries come back valid=false.
SpectrumEntry h3_spectrum(double e, int j2, int n);

/// Number of admissible closed-form hyperbolic levels: #{n >= 0 : n+j+1 < sqrt(e)}.
int h3_bound_count(double e, int j2);

/// Reference spinless spectra: E_n = -e^2/(2n^2) +/- (n^2-1)/2 for the
/// spherical/hyperbolic space, n >= 1. The hyperbolic entries are flagged
/// valid only inside the discrete range [-e^2/2, 1/2 - e].
SpectrumEntry schrodinger_spectrum(const SpaceModel& space, double e, int n);

struct FlatLimitGap {
  double curved_epsilon;  ///< dimensionful spherical level
  double bohr_epsilon;    ///< -m q^4 / (2 N^2)
  double gap;             ///< |difference|, expected O(1/rho^2)
};

/// Compare the dimensionful spherical Coulomb level against its flat-space
/// (Bohr) limit at curvature radius rho.
FlatLimitGap flat_limit_check(double q_sq, double m, double rho, int j2, int n);

}  // namespace ckepler
