#pragma once

#include "ptwg/banded.hpp"
#include "ptwg/grid.hpp"
#include "ptwg/params.hpp"

namespace ptwg {

struct EigenPair {
  cplx lambda;
  std::vector<cplx> psi;  // normalized to unit Euclidean norm
  double residual;        // ||A psi - lambda psi|| / ||psi||
  int iterations;
};

// Shift-invert inverse iteration with Rayleigh-quotient refinement once the
// estimate stabilizes to 1e-4.  Non-convergence raises MaxIterations with
// the best iterate attached; an exactly singular shift is retried after a
// relative 1e-8 perturbation.
EigenPair find_eigenpair(const BandedComplexMatrix& A, cplx sigma,
                         double tol = 1e-8, int maxit = 200);

// Separation scale of the discretized continuum on the truncated strip.
double gap_threshold(const StripGrid& g);

struct ScanItem {
  cplx lambda;
  double residual;
  bool discrete;  // mu0^2 - Re lambda > gap_threshold
};

struct ScanReport {
  std::vector<ScanItem> found;  // deduplicated, in shift order
  int discrete_count = 0;
  double gap = 0.0;
  int shifts_tried = 0;
  int shifts_converged = 0;
};

// Runs find_eigenpair from an nre x nim rectangle of shifts spanning
// [re(lo), re(hi)] x [im(lo), im(hi)], deduplicates (distance 1e-8) and
// classifies against the gap threshold below mu0sq.
ScanReport shift_scan(const BandedComplexMatrix& A, double mu0sq,
                      const StripGrid& grid, cplx lo, cplx hi, int nre,
                      int nim, double tol = 1e-8, int maxit = 80);
ScanReport shift_scan_serial(const BandedComplexMatrix& A, double mu0sq,
                             const StripGrid& grid, cplx lo, cplx hi, int nre,
                             int nim, double tol = 1e-8, int maxit = 80);

// Longitudinal amplitude profile |(Psi(x1, .), phi_0)|, one value per
// interior x1 point (trapezoid in x2).
std::vector<double> mode0_projection(const EigenPair& pair,
                                     const StripGrid& grid,
                                     const WaveguideParams& p);

// Exponential decay rate of the mode-0 amplitude over the outer third of
// the strip.  Fits both a pure exponential and a Dirichlet-wall-corrected
// model and returns the rate of the better fit.  FitError when the window
// is unusable (underflow / too few points).
double decay_rate(const EigenPair& pair, const StripGrid& grid,
                  const WaveguideParams& p);

// max over grid nodes of | |Psi(x1,x2)| - |Psi(-x1,d-x2)| |.
double symmetry_defect(const EigenPair& pair, const StripGrid& grid);

}  // namespace ptwg
