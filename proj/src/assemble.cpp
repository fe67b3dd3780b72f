#include "ptwg/assemble.hpp"

#include <cmath>
#include <string>

#include "ptwg/errors.hpp"

namespace ptwg {

void validate_support(const StripGrid& g, double lo, double hi) {
  double margin = 5.0 * g.h1();
  if (lo <= -g.L + margin || hi >= g.L - margin)
    throw GridError("perturbation support [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "] too close to the walls at +-" +
                    std::to_string(g.L));
}

StripGrid refine(const StripGrid& g) {
  // Halving h1 and h2 exactly: N -> 2N + 1.
  return {g.L, 2 * g.N1 + 1, 2 * g.N2 + 1};
}

namespace {

// Writes the transverse part of the three rows' worth of coefficients for
// one column strip into the matrix at base index `row0`.
void transverse_rows(BandedComplexMatrix& A, int row0, int m, double a,
                     double h2, bool flip_top) {
  const double ih2 = 1.0 / (h2 * h2);
  const cplx robin(0.0, 3.0 * a / h2);
  for (int j = 0; j < m; ++j) {
    int r = row0 + j;
    if (j == 0) {
      A.at(r, r) += cplx(3.5 * ih2, 0.0) - robin;
      A.at(r, r + 1) += -4.0 * ih2;
      A.at(r, r + 2) += 0.5 * ih2;
    } else if (j == m - 1) {
      A.at(r, r) += cplx(3.5 * ih2, 0.0) + (flip_top ? -robin : robin);
      A.at(r, r - 1) += -4.0 * ih2;
      A.at(r, r - 2) += 0.5 * ih2;
    } else {
      A.at(r, r) += 2.0 * ih2;
      A.at(r, r - 1) += -ih2;
      A.at(r, r + 1) += -ih2;
    }
  }
}

}  // namespace

BandedComplexMatrix assemble(const WaveguideParams& p,
                             const std::function<double(double)>& alpha_fn,
                             const StripGrid& grid, bool flip_boundary_sign) {
  require_valid(p);
  if (grid.N1 < 1 || grid.N2 < 3)
    throw GridError("grid too small: need N1 >= 1 and N2 >= 3");
  const int m = grid.rows();
  const long long n = grid.unknowns();
  if (n > (1LL << 31))
    throw GridError("grid exceeds addressable band storage");
  const double h1 = grid.h1(), h2 = grid.h2(p.d);
  const double ih1 = 1.0 / (h1 * h1);

  BandedComplexMatrix A(static_cast<int>(n), m, m);
  for (int i = 1; i <= grid.N1; ++i) {
    const int row0 = (i - 1) * m;
    const double a = alpha_fn(grid.x1(i));
    transverse_rows(A, row0, m, a, h2, flip_boundary_sign);
    for (int j = 0; j < m; ++j) {
      int r = row0 + j;
      A.at(r, r) += 2.0 * ih1;
      if (i > 1) A.at(r, r - m) += -ih1;
      if (i < grid.N1) A.at(r, r + m) += -ih1;
    }
  }
  return A;
}

BandedComplexMatrix assemble_perturbed(const WaveguideParams& p, double eps,
                                       const PerturbationProfile& beta,
                                       const StripGrid& grid) {
  if (eps != 0.0 && !beta.empty())
    validate_support(grid, beta.support_lo(), beta.support_hi());
  return assemble(
      p, [&](double x1) { return p.alpha0 + eps * beta(x1); }, grid);
}

BandedComplexMatrix assemble_transverse(const WaveguideParams& p, double alpha,
                                        int N2, bool flip_boundary_sign) {
  require_valid(p);
  if (N2 < 3) throw GridError("transverse grid too small");
  const int m = N2 + 2;
  const double h2 = p.d / (N2 + 1);
  BandedComplexMatrix A(m, 2, 2);
  transverse_rows(A, 0, m, alpha, h2, flip_boundary_sign);
  return A;
}

}  // namespace ptwg
