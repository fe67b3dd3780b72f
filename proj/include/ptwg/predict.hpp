#pragma once

#include <string>

#include "ptwg/tau.hpp"

namespace ptwg {

enum class Existence { Yes, No, Inconclusive };

const char* existence_name(Existence e);

// Weak-coupling existence verdict and eigenvalue expansion near the
// threshold mu0^2.  The decision tree is driven by the signs of
// alpha0*<beta> and tau; when the deciding quantity sits inside its
// numerical tolerance band the verdict is Inconclusive and the tag names
// the nearest case.
struct Prediction {
  Existence exists = Existence::No;
  std::string case_tag;              // th2.1-i..iv, th2.2-i/ii, th2.0
  double lambda_coeffs[4] = {0, 0, 0, 0};  // lambda0=mu0^2, lambda2,3,4
  double k_coeffs[2] = {0, 0};             // k1, k2
  Regime regime = Regime::Neumann;
  double epsilon = 0.0;
  double mean = 0.0;                 // <beta>
  TauResult tau_result{};

  // Full expansion lambda = mu0^2 - (eps k1 + eps^2 k2)^2.
  double lambda_of(double eps) const;
  // Expansion truncated after the eps^order term (order in {2, 3, 4}).
  double lambda_upto(double eps, int order) const;
  // sqrt(mu0^2 - lambda_of(eps)), clamped at 0 for non-existing branches.
  double decay_rate(double eps) const;
};

Prediction predict(const WaveguideParams& p, const PerturbationProfile& beta,
                   double epsilon, int J = 128, const QuadratureSpec& quad = {});

}  // namespace ptwg
