#pragma once

namespace ptwg {

// Uniform grid on the truncated strip [-L, L] x [0, d].  Longitudinal
// unknowns are the N1 interior points (Dirichlet walls at +-L); transverse
// unknowns include both boundary rows, N2 + 2 in total.
struct StripGrid {
  double L;
  int N1;
  int N2;

  double h1() const { return 2.0 * L / (N1 + 1); }
  double h2(double d) const { return d / (N2 + 1); }
  int rows() const { return N2 + 2; }             // transverse block size
  long long unknowns() const { return 1LL * N1 * (N2 + 2); }
  double x1(int i) const { return -L + i * h1(); }  // i = 1..N1
  // j = 0..N2+1; clamped so the top wall lands on d exactly despite roundoff.
  double x2(int j, double d) const {
    double v = j * h2(d);
    return v > d ? d : v;
  }
};

// Perturbation support must stay well inside the truncation: throws
// GridError unless [lo, hi] is contained in (-L + 5 h1, L - 5 h1).
void validate_support(const StripGrid& g, double lo, double hi);

// Halved-step refinement (both directions) for Richardson extrapolation.
StripGrid refine(const StripGrid& g);

}  // namespace ptwg
