#include "ptwg/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptwg/errors.hpp"

namespace ptwg {

std::vector<cplx> BandedComplexMatrix::apply(const std::vector<cplx>& x) const {
  std::vector<cplx> y(n, cplx(0.0, 0.0));
  for (int j = 0; j < n; ++j) {
    int ilo = std::max(0, j - ku), ihi = std::min(n - 1, j + kl);
    for (int i = ilo; i <= ihi; ++i) y[i] += at(i, j) * x[j];
  }
  return y;
}

double BandedComplexMatrix::max_abs() const {
  double m = 0.0;
  for (int j = 0; j < n; ++j) {
    int ilo = std::max(0, j - ku), ihi = std::min(n - 1, j + kl);
    for (int i = ilo; i <= ihi; ++i) m = std::max(m, std::abs(at(i, j)));
  }
  return m;
}

BandedLU band_lu_factor(BandedComplexMatrix A, cplx sigma) {
  const int n = A.n, kl = A.kl, ku = A.ku;
  const int kv = kl + ku;  // effective upper bandwidth with fill
  if (sigma != cplx(0.0, 0.0))
    for (int i = 0; i < n; ++i) A.at(i, i) -= sigma;

  BandedLU lu;
  lu.n = n;
  lu.kl = kl;
  lu.ku = ku;
  lu.ipiv.assign(n, 0);

  const int ldab = A.ldab();
  auto& ab = A.ab;
  auto entry = [&](int i, int j) -> cplx& {
    return ab[static_cast<size_t>(ldab) * j + (kv + i - j)];
  };

  for (int k = 0; k < n; ++k) {
    // Pivot search in column k, rows k .. k+kl.
    int imax = std::min(n - 1, k + kl);
    int piv = k;
    double best = std::abs(entry(k, k));
    for (int i = k + 1; i <= imax; ++i) {
      double v = std::abs(entry(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0)
      throw SingularShift("zero pivot in banded LU at column " +
                          std::to_string(k));
    lu.ipiv[k] = piv;
    int jhi = std::min(n - 1, k + kv);
    if (piv != k)
      for (int j = k; j <= jhi; ++j) std::swap(entry(k, j), entry(piv, j));
    cplx pivval = entry(k, k);
    for (int i = k + 1; i <= imax; ++i) {
      cplx m = entry(i, k) / pivval;
      entry(i, k) = m;
      if (m != cplx(0.0, 0.0))
        for (int j = k + 1; j <= jhi; ++j) entry(i, j) -= m * entry(k, j);
    }
  }
  lu.ab = std::move(A.ab);
  return lu;
}

void band_lu_solve(const BandedLU& lu, std::vector<cplx>& b) {
  const int n = lu.n, kl = lu.kl, ku = lu.ku;
  const int kv = kl + ku;
  const int ldab = 2 * kl + ku + 1;
  const auto& ab = lu.ab;
  auto entry = [&](int i, int j) -> const cplx& {
    return ab[static_cast<size_t>(ldab) * j + (kv + i - j)];
  };
  // Forward: apply pivots and L.
  for (int k = 0; k < n; ++k) {
    if (lu.ipiv[k] != k) std::swap(b[k], b[lu.ipiv[k]]);
    int imax = std::min(n - 1, k + kl);
    cplx bk = b[k];
    if (bk != cplx(0.0, 0.0))
      for (int i = k + 1; i <= imax; ++i) b[i] -= entry(i, k) * bk;
  }
  // Backward: solve U x = y.
  for (int k = n - 1; k >= 0; --k) {
    int jhi = std::min(n - 1, k + kv);
    cplx s = b[k];
    for (int j = k + 1; j <= jhi; ++j) s -= entry(k, j) * b[j];
    b[k] = s / entry(k, k);
  }
}

}  // namespace ptwg
