#pragma once

#include <string>
#include <vector>

namespace poncelet {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string details;
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;
  int abstentions = 0;  // grid points the simulator could not certify

  bool all_passed() const {
    for (const auto& r : results)
      if (!r.passed) return false;
    return true;
  }
};

// Runs the full cross-validation suite.  Deterministic: no wall-clock data
// ends up in the results, and all randomness is seeded.  The determinism
// criterion re-runs the other criteria and compares the rendered reports,
// so this call is expensive.
AcceptanceReport run_acceptance();

std::string acceptance_table(const AcceptanceReport& rep);

}  // namespace poncelet
