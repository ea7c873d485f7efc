#pragma once

#include <string>
#include <vector>

namespace gapspec::verify {

struct Metric {
  std::string name;
  double value;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  std::vector<Metric> metrics;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  int jobs = 1;
  /// Relative perturbation of the asymptotic constants (c0, tau_a); nonzero values are
  /// used to check that the suite actually detects a wrong constant.
  double perturb = 0.0;
  int n = 100;
};

inline constexpr int kCriterionCount = 13;

std::string criterion_title(int id);
CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});
/// Runs the listed criteria (all when empty) in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {}, const std::vector<int>& only = {});

/// "PASS  3  bessel eigenvalue law  (detail)".
std::string format_line(const CriterionResult& r);

}  // namespace gapspec::verify
