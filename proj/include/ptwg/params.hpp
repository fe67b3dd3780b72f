#pragma once

namespace ptwg {

// Spectral regime of the unperturbed waveguide, set by alpha0 * d / pi.
enum class Regime {
  Neumann,        // alpha0 == 0
  Subcritical,    // 0 < |alpha0| d / pi < 1
  Supercritical,  // |alpha0| d / pi > 1, not an integer
  Forbidden,      // |alpha0| d / pi is a nonzero integer (degenerate)
};

// Geometry and boundary parameter of the straight waveguide.
struct WaveguideParams {
  double d;       // strip width, > 0
  double alpha0;  // uniform boundary parameter

  Regime regime() const;
  // Threshold of the essential spectrum: mu0^2.
  double mu0() const;
};

const char* regime_name(Regime r);

// Validates d > 0 and rejects the degenerate regime (RegimeError).
void require_valid(const WaveguideParams& p);

}  // namespace ptwg
