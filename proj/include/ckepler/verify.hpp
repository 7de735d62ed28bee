#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ckepler::verify {

struct CaseResult {
  std::string name;
  bool pass = false;
  double expected = 0.0;
  double measured = 0.0;
  double gap = 0.0;
  double tol = 0.0;
  std::string detail;
};

struct CheckResult {
  int id = 0;
  std::string slug;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  std::vector<CaseResult> cases;
};

struct Options {
  /// Slugs to run; empty means all numbered checks.
  std::vector<std::string> only;
  /// Curvature radii for the flat-limit check.
  std::vector<double> rho_values{1e3, 1e4};
  /// Per-case progress sink (may be null).
  std::function<void(const std::string&)> log;
};

/// All registered check slugs in run order.
std::vector<std::string> check_slugs();

/// Run the verification suite (or the subset selected in Options).
std::vector<CheckResult> run(const Options& opts = {});

bool all_pass(const std::vector<CheckResult>& results);

/// One-line human rendering of a case result.
std::string format_case(const CheckResult& check, const CaseResult& c);

}  // namespace ckepler::verify
