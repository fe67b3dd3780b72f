// Acceptance gate: runs every validation criterion in order and prints one
// pass/fail line per criterion.  Exit status 0 only when all pass.
#include <cstdio>
#include <exception>

#include "ptwg/validate.hpp"

int main() {
  using namespace ptwg;
  int failures = 0;
  for (int id = 1; id <= kCriterionCount; ++id) {
    CriterionResult r;
    try {
      r = run_criterion(id);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = "criterion crashed";
      r.pass = false;
      r.measured = e.what();
    }
    std::printf("[%2d/%d] %s  %s  (%.1f s)\n    %s\n", id, kCriterionCount,
                r.pass ? "PASS" : "FAIL", r.name.c_str(),
                static_cast<double>(r.runtime_ms) / 1000.0,
                r.measured.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  if (failures == 0) {
    std::printf("ACCEPTANCE: PASS (%d/%d criteria)\n", kCriterionCount,
                kCriterionCount);
  } else {
    std::printf("ACCEPTANCE: FAIL (%d of %d criteria failed)\n", failures,
                kCriterionCount);
  }
  return failures == 0 ? 0 : 1;
}
