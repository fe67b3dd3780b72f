#pragma once

#include <string>
#include <vector>

namespace ptwg {

// Debug knobs demonstrating that the validation suite catches deliberate
// defects: starving the pairing quadrature fails the biorthonormality
// check, flipping the boundary sign at x2 = d fails the residual-order
// check.
struct ValidateOptions {
  int gram_quad_nodes = 256;
  bool flip_boundary_sign = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string measured;  // measured values vs required tolerances
  long long runtime_ms = 0;
};

struct ValidateReport {
  std::vector<CriterionResult> results;
  bool all_pass = false;
  std::string table() const;
};

inline constexpr int kCriterionCount = 10;

// Runs one acceptance criterion (id in 1..10).
CriterionResult run_criterion(int id, const ValidateOptions& opts = {});

// Runs the whole suite in order.
ValidateReport run_validate(const ValidateOptions& opts = {});

}  // namespace ptwg
