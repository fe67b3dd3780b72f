#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "ptwg/banded.hpp"
#include "ptwg/errors.hpp"

using namespace ptwg;

namespace {

// Dense reference multiply for validation.
std::vector<cplx> dense_apply(const std::vector<std::vector<cplx>>& M,
                              const std::vector<cplx>& x) {
  const size_t n = M.size();
  std::vector<cplx> y(n, cplx(0.0, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) y[i] += M[i][j] * x[j];
  return y;
}

BandedComplexMatrix random_banded(int n, int kl, int ku, unsigned seed,
                                  std::vector<std::vector<cplx>>* dense) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  BandedComplexMatrix A(n, kl, ku);
  dense->assign(n, std::vector<cplx>(n, cplx(0.0, 0.0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i - j <= kl && j - i <= ku) {
        cplx v{U(rng), U(rng)};
        if (i == j) v += 3.0;  // keep comfortably nonsingular
        A.at(i, j) = v;
        (*dense)[i][j] = v;
      }
  return A;
}

double residual(const std::vector<std::vector<cplx>>& M,
                const std::vector<cplx>& x, const std::vector<cplx>& b,
                cplx sigma) {
  std::vector<cplx> y = dense_apply(M, x);
  double worst = 0.0;
  for (size_t i = 0; i < x.size(); ++i)
    worst = std::max(worst, std::abs(y[i] - sigma * x[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("banded apply matches a dense multiply") {
  std::vector<std::vector<cplx>> dense;
  BandedComplexMatrix A = random_banded(12, 3, 2, 11, &dense);
  std::vector<cplx> x(12);
  for (int i = 0; i < 12; ++i) x[i] = cplx(std::sin(i + 1.0), 0.25 * i);
  std::vector<cplx> y = A.apply(x);
  std::vector<cplx> want = dense_apply(dense, x);
  for (int i = 0; i < 12; ++i) CHECK(std::abs(y[i] - want[i]) < 1e-13);
}

TEST_CASE("factor and solve reproduce the right-hand side") {
  std::vector<std::vector<cplx>> dense;
  BandedComplexMatrix A = random_banded(40, 4, 3, 29, &dense);
  std::vector<cplx> b(40);
  for (int i = 0; i < 40; ++i) b[i] = cplx(0.3 * i - 2.0, std::cos(1.0 * i));

  for (cplx sigma : {cplx(0.0, 0.0), cplx(0.4, -0.7)}) {
    BandedLU lu = band_lu_factor(A, sigma);
    std::vector<cplx> x = b;
    band_lu_solve(lu, x);
    CAPTURE(sigma.real());
    CHECK(residual(dense, x, b, sigma) < 1e-11);
  }
}

TEST_CASE("partial pivoting handles zero diagonals") {
  // [[0, 1], [1, 0]] requires a row swap at the first step.
  BandedComplexMatrix A(2, 1, 1);
  A.at(0, 1) = 1.0;
  A.at(1, 0) = 1.0;
  BandedLU lu = band_lu_factor(A, cplx(0.0, 0.0));
  std::vector<cplx> x = {cplx(2.0, 0.0), cplx(5.0, 0.0)};
  band_lu_solve(lu, x);
  CHECK(std::abs(x[0] - cplx(5.0, 0.0)) < 1e-14);
  CHECK(std::abs(x[1] - cplx(2.0, 0.0)) < 1e-14);
}

TEST_CASE("exactly singular shifted matrix is reported") {
  BandedComplexMatrix A(5, 1, 1);
  for (int i = 0; i < 5; ++i) A.at(i, i) = 1.0;
  CHECK_THROWS_AS(band_lu_factor(A, cplx(1.0, 0.0)), SingularShift);
  CHECK_NOTHROW(band_lu_factor(A, cplx(1.0 + 1e-9, 0.0)));
}

TEST_CASE("band accessors agree with in-band predicate") {
  BandedComplexMatrix A(6, 2, 1);
  A.at(3, 2) = cplx(1.5, -0.5);
  CHECK(A.in_band(3, 2));
  CHECK(A.in_band(3, 4));
  CHECK_FALSE(A.in_band(3, 5));   // beyond ku
  CHECK_FALSE(A.in_band(5, 2));   // beyond kl
  CHECK(A.get(3, 2) == cplx(1.5, -0.5));
  CHECK(A.get(0, 5) == cplx(0.0, 0.0));  // out of band reads as zero
  CHECK(A.max_abs() == doctest::Approx(std::abs(cplx(1.5, -0.5))));
}

TEST_CASE("wide bands behave like dense matrices") {
  std::vector<std::vector<cplx>> dense;
  BandedComplexMatrix A = random_banded(9, 8, 8, 47, &dense);
  std::vector<cplx> b(9, cplx(1.0, 1.0));
  BandedLU lu = band_lu_factor(A, cplx(0.0, 0.0));
  std::vector<cplx> x = b;
  band_lu_solve(lu, x);
  CHECK(residual(dense, x, b, cplx(0.0, 0.0)) < 1e-12);
}
