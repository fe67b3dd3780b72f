#pragma once

#include <functional>

#include "ptwg/banded.hpp"
#include "ptwg/grid.hpp"
#include "ptwg/params.hpp"
#include "ptwg/profile.hpp"

namespace ptwg {

// Discretization of -Laplacian with the boundary condition
// d2_Psi + i alpha(x1) Psi = 0 imposed with the SAME sign of the
// x2-derivative on both horizontal boundaries, Dirichlet at x1 = +-L.
// Unknown ordering is x2-fastest, giving kl = ku = N2 + 2.
//
// Boundary rows eliminate the condition through a one-sided second-order
// closure:  (7 p0 - 8 p1 + p2) / (2 h2^2) - (3 i a / h2) p0   at x2 = 0,
// mirrored with +3 i a / h2 at x2 = d.
//
// flip_boundary_sign deliberately builds the wrong (outward-normal) sign at
// x2 = d; it exists so the validation suite can demonstrate the residual
// test catches the error.
BandedComplexMatrix assemble(const WaveguideParams& p,
                             const std::function<double(double)>& alpha_fn,
                             const StripGrid& grid,
                             bool flip_boundary_sign = false);

// Convenience: alpha(x1) = alpha0 + eps * beta(x1), with the support check.
BandedComplexMatrix assemble_perturbed(const WaveguideParams& p, double eps,
                                       const PerturbationProfile& beta,
                                       const StripGrid& grid);

// 1D transverse operator on [0, d] with constant alpha: the same closure on
// an (N2+2)-point grid, used by the residual-order tests.
BandedComplexMatrix assemble_transverse(const WaveguideParams& p, double alpha,
                                        int N2, bool flip_boundary_sign = false);

}  // namespace ptwg
