// Cross-validation suite runner: one pass/fail line per criterion.
#include <cstdio>

#include "poncelet/acceptance.hpp"

int main() {
  poncelet::AcceptanceReport rep = poncelet::run_acceptance();
  for (const auto& r : rep.results)
    std::printf("criterion %2d %-32s %s  %s\n", r.id, r.name.c_str(),
                r.passed ? "PASS" : "FAIL", r.details.c_str());
  std::printf("grid abstentions: %d\n", rep.abstentions);
  return rep.all_passed() ? 0 : 1;
}
