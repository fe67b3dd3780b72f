#pragma once

#include "ptwg/kernels.hpp"
#include "ptwg/params.hpp"
#include "ptwg/profile.hpp"

namespace ptwg {

// The beta-dependent constant driving the second-order coupling coefficient.
// Computed as a truncated mode series with a certified tail bound.
struct TauResult {
  double value;       // partial sum of the series through J terms
  Regime regime;
  int J;              // series truncation (number of terms)
  double tail_bound;  // bound on the dropped terms
  bool converged;     // doubling J/2 -> J moved the value by < max(1e-10, tail)
};

TauResult tau(const WaveguideParams& p, const PerturbationProfile& beta,
              int J = 128, const QuadratureSpec& quad = {});

// Serial reference implementation (no parallel bracket batch).
TauResult tau_serial(const WaveguideParams& p, const PerturbationProfile& beta,
                     int J = 128, const QuadratureSpec& quad = {});

}  // namespace ptwg
