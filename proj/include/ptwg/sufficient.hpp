#pragma once

#include "ptwg/params.hpp"
#include "ptwg/profile.hpp"
#include "ptwg/quadrature.hpp"

namespace ptwg {

// Sufficient condition for tau > 0 in the subcritical regime, for the
// scaled family beta(x) = betatilde(x/l) with zero-mean betatilde.
struct ZeroMeanPositivity {
  bool holds;
  double left;   // ||integral sgn(.-t) betatilde(t) dt||^2
  double right;  // cot-weighted threshold, carries the 1/l^2 scaling
  explicit operator bool() const { return holds; }
};

ZeroMeanPositivity check_th2_3(const WaveguideParams& p,
                               const PerturbationProfile& betatilde, double l,
                               const QuadratureSpec& quad = {});

// Sufficient condition for tau > 0 in the supercritical regime: the
// boundary-mode bracket dominates the finitely many sign-changing terms.
struct SupercriticalPositivity {
  bool holds;
  double lhs;  // alpha0 <beta v_1> cot(alpha0 d / 2)
  double rhs;  // weighted sum over even modes below |alpha0|
  int m;       // number of sign-changing even modes
  explicit operator bool() const { return holds; }
};

SupercriticalPositivity check_th2_4(const WaveguideParams& p,
                                    const PerturbationProfile& beta,
                                    const QuadratureSpec& quad = {});

// Builds beta = -v'' + 3 mu0^2 v from a narrow bump v chosen so that
// 3||v'||^2 > (7 pi^2/d^2)||v||^2; the result passes check_th2_4 for
// alpha0 slightly above the second harmonic.
PerturbationProfile construct_beta_for_th2_4(const WaveguideParams& p,
                                             double amplitude = 1.0);

}  // namespace ptwg
