#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ckepler {

/// Numerical failure (solver breakdown, nonconvergence). CLI maps this to exit 3.
class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Series did not converge within the term budget; carries the partial sum.
class series_error : public solver_error {
 public:
  series_error(const std::string& what, std::complex<double> partial, int terms)
      : solver_error(what), partial_(partial), terms_(terms) {}

  std::complex<double> partial_value() const { return partial_; }
  int terms_used() const { return terms_; }

 private:
  std::complex<double> partial_;
  int terms_;
};

}  // namespace ckepler
