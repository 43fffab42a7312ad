#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ncguard::cli {

/// Closed forms the suite checks. Swapping one out (the hidden --tamper
/// flag) must make the corresponding criterion fail.
struct AnalyticHooks {
  std::function<double(double)> error_correction;
  std::function<double(double, double, double)> packet;
  std::function<double(double, double, std::size_t, double)> generation;
  std::function<double(std::size_t)> peak;
  std::function<double(double, double)> crossover;

  static AnalyticHooks defaults();
  /// Deliberate faults: "packet", "generation", "peak", "crossover".
  static AnalyticHooks tampered(const std::string& which);
};

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string measured;
  std::string expected;
  double seconds = 0.0;
};

struct ValidateOptions {
  std::uint64_t seed = 1;
  std::string criterion;  // empty: all
  AnalyticHooks hooks = AnalyticHooks::defaults();
  unsigned threads = 0;
};

const std::vector<std::string>& criterion_names();

/// Throws UsageError for an unknown name.
CriterionResult run_criterion(const std::string& name, const ValidateOptions& options);

/// Runs the selected criteria, printing one PASS/FAIL line each. Returns 0
/// when all pass and 1 otherwise.
int run_validate(const ValidateOptions& options, std::ostream& os);

}  // namespace ncguard::cli
