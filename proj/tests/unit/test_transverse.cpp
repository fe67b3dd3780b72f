#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "ptwg/transverse.hpp"

using namespace ptwg;

namespace {
// Analytic derivative of the mode profile.
cplx psi_prime(const WaveguideParams& p, int j, double x2) {
  const double mu = mu_j(p, j);
  if (mu == 0.0) return {0.0, 0.0};
  return -mu * std::sin(mu * x2) -
         cplx(0.0, p.alpha0) * std::cos(mu * x2);
}
}  // namespace

TEST_CASE("mode frequencies carry the threshold at index 0") {
  WaveguideParams sub{M_PI, 0.5};
  CHECK(mu_j(sub, 0) == doctest::Approx(0.5));
  CHECK(mu_j(sub, 1) == doctest::Approx(1.0));
  CHECK(mu_j(sub, 4) == doctest::Approx(4.0));

  WaveguideParams sup{M_PI, 1.7};
  CHECK(mu_j(sup, 0) == doctest::Approx(1.0));  // threshold pi/d
  CHECK(mu_j(sup, 1) == doctest::Approx(1.7));  // boundary-parameter mode
  CHECK(mu_j(sup, 2) == doctest::Approx(2.0));
  CHECK(mu_j(sup, 3) == doctest::Approx(3.0));

  WaveguideParams neu{M_PI, 0.0};
  CHECK(mu_j(neu, 0) == 0.0);
  CHECK(mu_j(neu, 3) == doctest::Approx(3.0));
}

TEST_CASE("modes satisfy the boundary condition at both walls") {
  for (double a : {0.5, -0.5, 1.7, 0.0}) {
    WaveguideParams p{M_PI, a};
    for (int j = 0; j <= 4; ++j) {
      for (double x2 : {0.0, p.d}) {
        cplx bc = psi_prime(p, j, x2) +
                  cplx(0.0, p.alpha0) * psi_eval(p, j, x2);
        CHECK(std::abs(bc) < 1e-12);
      }
    }
  }
}

TEST_CASE("pairing matrix is the identity") {
  for (double a : {0.0, 0.5, -0.9, 1.7}) {
    WaveguideParams p{M_PI, a};
    ModeBasis basis = make_basis(p, 8);
    std::vector<cplx> G = biortho_gram(basis);
    const int n = 9;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        cplx want = i == k ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
        worst = std::max(worst, std::abs(G[i * n + k] - want));
      }
    CAPTURE(a);
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("parallel and serial pairing agree bitwise") {
  WaveguideParams p{M_PI, -0.5};
  ModeBasis basis = make_basis(p, 12);
  std::vector<cplx> a = biortho_gram(basis);
  std::vector<cplx> b = biortho_gram_serial(basis);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("expansion coefficients recover a pure mode") {
  WaveguideParams p{M_PI, -0.5};
  ModeBasis basis = make_basis(p, 6);
  const int samples = 4001;
  std::vector<cplx> f(samples);
  for (int i = 0; i < samples; ++i)
    f[i] = psi_eval(p, 2, p.d * i / (samples - 1));
  std::vector<cplx> c = expand_coeffs(basis, f);
  REQUIRE(c.size() == 7);
  CHECK(std::abs(c[2] - cplx(1.0, 0.0)) < 1e-5);
  for (int j : {0, 1, 3, 4, 5, 6}) CHECK(std::abs(c[j]) < 1e-5);
}

TEST_CASE("mode sums reconstruct expanded functions") {
  WaveguideParams p{M_PI, 0.9};
  ModeBasis basis = make_basis(p, 10);
  auto f = [&](double x2) {
    return psi_eval(p, 0, x2) * cplx(0.4, 0.0) +
           psi_eval(p, 3, x2) * cplx(0.0, 1.1);
  };
  const int samples = 4001;
  std::vector<cplx> fs(samples);
  for (int i = 0; i < samples; ++i) fs[i] = f(p.d * i / (samples - 1));
  std::vector<cplx> c = expand_coeffs(basis, fs);
  for (double x2 : {0.3, 1.7, 2.9})
    CHECK(std::abs(mode_sum(basis, c, x2) - f(x2)) < 1e-5);
}

TEST_CASE("neumann normalization is 1/d for the constant mode") {
  WaveguideParams p{2.0, 0.0};
  CHECK(std::abs(A_j(p, 0) - cplx(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(psi_eval(p, 0, 1.3) - cplx(1.0, 0.0)) < 1e-14);
}
