#pragma once

#include <complex>
#include <vector>

namespace ptwg {

using cplx = std::complex<double>;

// General banded complex matrix with room for partial-pivoting fill-in.
// Storage is column-major with leading dimension ldab = 2*kl + ku + 1;
// entry (i, j) of the matrix lives at ab[ldab*j + kl + ku + i - j] for
// j - ku <= i <= j + kl.  The top kl rows of each column are fill space.
struct BandedComplexMatrix {
  int n = 0;
  int kl = 0;
  int ku = 0;
  std::vector<cplx> ab;

  BandedComplexMatrix() = default;
  BandedComplexMatrix(int n_, int kl_, int ku_)
      : n(n_), kl(kl_), ku(ku_),
        ab(static_cast<size_t>(2 * kl_ + ku_ + 1) * n_, cplx(0.0, 0.0)) {}

  int ldab() const { return 2 * kl + ku + 1; }

  cplx& at(int i, int j) {
    return ab[static_cast<size_t>(ldab()) * j + (kl + ku + i - j)];
  }
  const cplx& at(int i, int j) const {
    return ab[static_cast<size_t>(ldab()) * j + (kl + ku + i - j)];
  }
  bool in_band(int i, int j) const {
    return i >= 0 && j >= 0 && i < n && j < n && i - j <= kl && j - i <= ku;
  }
  cplx get(int i, int j) const {
    return in_band(i, j) ? at(i, j) : cplx(0.0, 0.0);
  }

  // y = A x
  std::vector<cplx> apply(const std::vector<cplx>& x) const;
  // Max-norm of A restricted to the band (scale for residual tests).
  double max_abs() const;
};

// LU factors of (A - sigma I) with partial pivoting, banded layout.
struct BandedLU {
  int n = 0;
  int kl = 0;
  int ku = 0;
  std::vector<cplx> ab;      // L multipliers below, U in and above diagonal
  std::vector<int> ipiv;     // row swapped with k at step k
};

// Factors (A - sigma I); consumes its argument (pass a copy or std::move).
// Exactly singular pivot -> SingularShift.
BandedLU band_lu_factor(BandedComplexMatrix A, cplx sigma);

// Solves in place using the factorization.
void band_lu_solve(const BandedLU& lu, std::vector<cplx>& b);

}  // namespace ptwg
