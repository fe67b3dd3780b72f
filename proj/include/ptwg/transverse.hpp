#pragma once

#include <complex>
#include <vector>

#include "ptwg/params.hpp"
#include "ptwg/quadrature.hpp"

namespace ptwg {

using cplx = std::complex<double>;

// One transverse mode of the uniform waveguide: eigenvalue mu^2 and the
// normalization constant of the dual family.
struct TransverseMode {
  int j;
  double mu;
  cplx A;
};

// Transverse frequency mu_j.  Index 0 always carries the spectral threshold;
// in the supercritical regime index 1 carries the boundary-parameter mode
// (so the mu_j are not sorted there).
double mu_j(const WaveguideParams& p, int j);

// Dual normalization A_j with <phi_j, psi_k> = delta_jk.
cplx A_j(const WaveguideParams& p, int j);

// Mode profile psi_j(x2) = cos(mu x2) - i (alpha0/mu) sin(mu x2); x2 in [0,d].
cplx psi_eval(const WaveguideParams& p, int j, double x2);

// Dual profile phi_j(x2) = conj(A_j psi_j(x2)).
cplx phi_eval(const WaveguideParams& p, int j, double x2);

struct ModeBasis {
  WaveguideParams params;
  int J;  // highest mode index
  std::vector<TransverseMode> modes;
};

ModeBasis make_basis(const WaveguideParams& p, int J);

// Pairing matrix G(j,k) = <phi_k, psi_j> over [0,d]; should be the identity.
// Row-major (J+1) x (J+1).
std::vector<cplx> biortho_gram(const ModeBasis& basis, int quad_nodes = 256);
std::vector<cplx> biortho_gram_serial(const ModeBasis& basis,
                                      int quad_nodes = 256);

// Expansion coefficients c_j = <phi_j, f> of a function sampled uniformly on
// [0, d] (samples.size() >= 2, endpoints included), by the trapezoid rule.
std::vector<cplx> expand_coeffs(const ModeBasis& basis,
                                const std::vector<cplx>& samples);

// Pointwise partial sum sum_j c_j psi_j(x2).
cplx mode_sum(const ModeBasis& basis, const std::vector<cplx>& coeffs,
              double x2);

}  // namespace ptwg
