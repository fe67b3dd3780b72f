#pragma once

#include <vector>

#include "ptwg/params.hpp"
#include "ptwg/profile.hpp"
#include "ptwg/quadrature.hpp"

namespace ptwg {

// Longitudinal kernel functions v_j driven by the perturbation beta:
//   v_0(x) = -1/2 * integral |x-t| beta(t) dt
//   v_j(x) = integral exp(-kappa_j |x-t|) beta(t) dt / (2 kappa_j),
// with kappa_j = sqrt(mu_j^2 - mu_0^2) for j >= 1.

double kappa_j(const WaveguideParams& p, int j);

double v_j_eval(const WaveguideParams& p, const PerturbationProfile& beta,
                int j, double x1, const QuadratureSpec& quad = {});

enum class BracketMethod { Quadrature, OdeOracle };

// Pairing <beta v_j> with the magnitude bound used in tail certificates.
struct BracketValue {
  int j;
  double value;
  BracketMethod method;
  double tail_error;  // |<beta v_j>| <= ||beta||^2/(mu_j^2-mu_0^2) for j >= 1
};

// Double integral over supp(beta)^2, split at the diagonal kink.
BracketValue bracket_beta_vj(const WaveguideParams& p,
                             const PerturbationProfile& beta, int j,
                             const QuadratureSpec& quad = {});

// Independent oracle: solves -v'' + kappa^2 v = beta (or -v'' = beta for
// j = 0) on a truncated line with decaying closures, Richardson-extrapolated
// over two grids, then integrates beta*v by Simpson.
BracketValue bracket_beta_vj_ode(const WaveguideParams& p,
                                 const PerturbationProfile& beta, int j,
                                 int grid_points = 3201);

// Brackets for a list of mode indices (independent work items).
std::vector<BracketValue> brackets_batch(const WaveguideParams& p,
                                         const PerturbationProfile& beta,
                                         const std::vector<int>& js,
                                         const QuadratureSpec& quad = {});
std::vector<BracketValue> brackets_batch_serial(const WaveguideParams& p,
                                                const PerturbationProfile& beta,
                                                const std::vector<int>& js,
                                                const QuadratureSpec& quad = {});

}  // namespace ptwg
