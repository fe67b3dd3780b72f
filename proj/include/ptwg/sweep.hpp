#pragma once

#include <string>
#include <vector>

#include "ptwg/config.hpp"
#include "ptwg/report.hpp"

namespace ptwg {

// Coarse-grid eigensolve plus optional halved-step refinement and
// h-Richardson extrapolation of the eigenvalue.
struct RefinedSolve {
  StripGrid grid_coarse{0.0, 0, 0};
  StripGrid grid_fine{0.0, 0, 0};
  EigenPair coarse;
  EigenPair fine;     // populated only when refined
  bool refined = false;
  cplx lambda{0.0, 0.0};  // (4 fine - coarse) / 3 when refined

  const EigenPair& best_pair() const { return refined ? fine : coarse; }
  const StripGrid& best_grid() const {
    return refined ? grid_fine : grid_coarse;
  }
};

RefinedSolve solve_eigen_refined(const WaveguideParams& p, double eps,
                                 const PerturbationProfile& beta,
                                 const StripGrid& coarse, cplx sigma,
                                 bool richardson, double tol = 1e-8,
                                 int maxit = 200);

struct SweepResult {
  Prediction prediction;
  std::vector<SweepRow> rows;
  int fit_order = 0;       // 2: mean-driven law; 4: tau-driven law; 0: absent
  double fit_target = 0.0; // k1^2 (order 2) or k2^2 (order 4)
  double fit_coeff = 0.0;  // measured coefficient at the finest converged eps
  std::string summary() const;
};

// Predicts once, then solves one row per epsilon (parallel across rows when
// cfg.jobs > 1).  Rows where no bound state is predicted are marked absent;
// rows whose solve fails are flagged non-converged.  Both keep NaN entries.
SweepResult run_sweep(const ExperimentConfig& cfg);

}  // namespace ptwg
