#pragma once

#include <functional>

#include "ptwg/transverse.hpp"

namespace ptwg {

// x1-support of a source term; the transverse range is always [0, d].
struct SupportBox {
  double x1_lo;
  double x1_hi;
};

// Mode-resolved solution of (H - z) u = F on the strip, evaluated on a
// tensor output grid, together with a certified bound on the dropped modes.
struct ResolventField {
  std::vector<double> x1;     // output abscissas
  std::vector<double> x2;     // output transverse points
  std::vector<cplx> values;   // row-major: values[i1 * x2.size() + i2]
  int J;                      // modes kept
  double tail_bound;          // L2 bound on the dropped-mode remainder
  double f_l2norm;            // L2 norm of the source over its support
};

// Applies the resolvent at spectral parameter z (off the essential spectrum;
// otherwise SpectrumError) to a smooth source F supported in the box.
// Mode-by-mode: transverse projection, then a 1D convolution with kernel
// exp(-kappa_j |x-t|)/(2 kappa_j), kappa_j = sqrt(mu_j^2 - z), Re kappa > 0.
ResolventField resolvent_apply(const WaveguideParams& p, cplx z,
                               const std::function<cplx(double, double)>& F,
                               const SupportBox& box, int J,
                               const std::vector<double>& x1_out,
                               const std::vector<double>& x2_out,
                               const QuadratureSpec& quad = {});

ResolventField resolvent_apply_serial(
    const WaveguideParams& p, cplx z,
    const std::function<cplx(double, double)>& F, const SupportBox& box, int J,
    const std::vector<double>& x1_out, const std::vector<double>& x2_out,
    const QuadratureSpec& quad = {});

// Discrete L2 norm of the field over the output grid (trapezoid weights),
// used to compare against the resolvent norm bound ||F|| / dist(z, spectrum).
double field_l2norm(const ResolventField& f);

}  // namespace ptwg
