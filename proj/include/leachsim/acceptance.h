#pragma once

#include <string>
#include <vector>

namespace leachsim {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  int seeds = 10;        // seeds per sweep cell
  unsigned workers = 0;  // 0: hardware concurrency
};

/// Runs the built-in acceptance suite: p-trend sweeps, sink placement,
/// soft-threshold insensitivity, k1 bound, radio constants, conservation and
/// determinism, reactive/proactive equivalence and the calibration band.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "[PASS] 1 name: detail"
std::string format_result_line(const CriterionResult& result);

}  // namespace leachsim
