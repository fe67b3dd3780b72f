#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "ptwg/assemble.hpp"
#include "ptwg/eigen.hpp"
#include "ptwg/errors.hpp"
#include "ptwg/predict.hpp"
#include "ptwg/transverse.hpp"

using namespace ptwg;

namespace {
constexpr double kBumpMean = 1.2069003224378765;

struct BoundStateCase {
  WaveguideParams p{M_PI, -0.5};
  PerturbationProfile beta = make_bump(0.0, 1.0, 2.0 / kBumpMean);
  double eps = 0.3;
  StripGrid grid{15.0, 299, 31};
  Prediction pred;
  BoundStateCase() { pred = predict(p, beta, eps); }
  BandedComplexMatrix matrix() const {
    return assemble_perturbed(p, eps, beta, grid);
  }
};
}  // namespace

TEST_CASE("grid bookkeeping") {
  StripGrid g{15.0, 299, 31};
  CHECK(g.h1() == doctest::Approx(0.1));
  CHECK(g.h2(M_PI) == doctest::Approx(M_PI / 32));
  CHECK(g.rows() == 33);
  CHECK(g.unknowns() == 299LL * 33);
  CHECK(g.x1(150) == doctest::Approx(0.0));
  CHECK(g.x2(0, M_PI) == 0.0);
  CHECK(g.x2(32, M_PI) == doctest::Approx(M_PI));

  StripGrid f = refine(g);
  CHECK(f.L == g.L);
  CHECK(f.N1 == 599);
  CHECK(f.N2 == 63);
  CHECK(f.h1() == doctest::Approx(g.h1() / 2));
}

TEST_CASE("support validation protects the truncation") {
  StripGrid g{15.0, 299, 31};
  CHECK_NOTHROW(validate_support(g, -1.0, 1.0));
  CHECK_THROWS_AS(validate_support(g, -1.0, 14.9), GridError);
  WaveguideParams p{M_PI, -0.5};
  CHECK_THROWS_AS(
      assemble_perturbed(p, 0.1, make_bump(14.2, 1.0, 1.0), g),
      GridError);
}

TEST_CASE("assembled operator annihilates sampled transverse modes") {
  WaveguideParams p{M_PI, 0.6};
  const int N2 = 99;
  for (int j : {0, 1, 3}) {
    BandedComplexMatrix A1 = assemble_transverse(p, p.alpha0, N2);
    BandedComplexMatrix A2 = assemble_transverse(p, p.alpha0, 2 * N2 + 1);
    auto resid = [&](const BandedComplexMatrix& A, int n2) {
      const int n = n2 + 2;
      const double mu = mu_j(p, j);
      std::vector<cplx> u(n);
      for (int i = 0; i < n; ++i)
        u[i] = psi_eval(p, j, p.d * i / (n2 + 1));
      std::vector<cplx> r = A.apply(u);
      double worst = 0.0;
      for (int i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(r[i] - mu * mu * u[i]));
      return worst;
    };
    const double ratio = resid(A1, N2) / resid(A2, 2 * N2 + 1);
    CAPTURE(j);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
  }
}

TEST_CASE("deliberately flipped boundary sign changes only the top closure") {
  WaveguideParams p{M_PI, 0.6};
  BandedComplexMatrix A = assemble_transverse(p, p.alpha0, 19);
  BandedComplexMatrix B = assemble_transverse(p, p.alpha0, 19, true);
  const int n = 21;
  int differing_rows = 0;
  for (int i = 0; i < n; ++i) {
    bool differs = false;
    for (int j = 0; j < n; ++j)
      if (A.get(i, j) != B.get(i, j)) differs = true;
    differing_rows += differs ? 1 : 0;
  }
  CHECK(differing_rows == 1);  // only the x2 = d closure row
}

TEST_CASE("bound state matches the weak-coupling prediction") {
  BoundStateCase c;
  REQUIRE(c.pred.exists == Existence::Yes);
  const double lam_pred = c.pred.lambda_of(c.eps);
  BandedComplexMatrix A = c.matrix();
  EigenPair e = find_eigenpair(A, {lam_pred, 0.0});
  CHECK(e.residual <= 1e-8);
  CHECK(e.iterations > 0);
  CHECK(std::abs(e.lambda - cplx(lam_pred, 0.0)) < 0.01);
  CHECK(std::abs(e.lambda.imag()) < 1e-8);

  // The mirror symmetry of the profile carries to the eigenfunction modulus.
  CHECK(symmetry_defect(e, c.grid) < 1e-6);

  // Longitudinal projection peaks near the perturbation.
  std::vector<double> amp = mode0_projection(e, c.grid, c.p);
  REQUIRE(amp.size() == static_cast<size_t>(c.grid.N1));
  size_t peak = 0;
  for (size_t i = 0; i < amp.size(); ++i)
    if (amp[i] > amp[peak]) peak = i;
  CHECK(std::abs(c.grid.x1(static_cast<int>(peak) + 1)) < 2.0);

  // Measured longitudinal decay tracks the predicted rate.
  const double k_pred = c.pred.decay_rate(c.eps);
  const double k_fd = decay_rate(e, c.grid, c.p);
  CHECK(k_fd == doctest::Approx(k_pred).epsilon(0.4));
}

TEST_CASE("iteration cap raises with the best iterate attached") {
  BoundStateCase c;
  BandedComplexMatrix A = c.matrix();
  try {
    find_eigenpair(A, {0.05, 0.0}, 1e-12, 2);
    FAIL("expected the iteration cap to trigger");
  } catch (const MaxIterations& e) {
    CHECK(e.best_residual > 1e-12);
    CHECK(e.best_vector.size() == static_cast<size_t>(c.grid.unknowns()));
    CHECK(std::isfinite(e.best_lambda.real()));
  }
}

TEST_CASE("gap threshold separates discrete candidates") {
  StripGrid g{15.0, 299, 31};
  CHECK(gap_threshold(g) ==
        doctest::Approx(2.0 * std::pow(M_PI / 30.0, 2)).epsilon(1e-12));
}

TEST_CASE("shift scan finds the bound state once") {
  BoundStateCase c;
  BandedComplexMatrix A = c.matrix();
  const double mu0sq = 0.25;
  ScanReport rep = shift_scan(A, mu0sq, c.grid, {0.15, -0.01}, {0.25, 0.01},
                              3, 3);
  CHECK(rep.shifts_tried == 9);
  CHECK(rep.discrete_count == 1);
  bool seen = false;
  for (const ScanItem& it : rep.found)
    if (it.discrete && std::abs(it.lambda - cplx(c.pred.lambda_of(c.eps), 0.0)) < 0.01)
      seen = true;
  CHECK(seen);

  ScanReport rs = shift_scan_serial(A, mu0sq, c.grid, {0.15, -0.01},
                                    {0.25, 0.01}, 3, 3);
  REQUIRE(rs.found.size() == rep.found.size());
  for (size_t i = 0; i < rs.found.size(); ++i)
    CHECK(rs.found[i].lambda == rep.found[i].lambda);
}

TEST_CASE("assembly rejects undersized grids") {
  WaveguideParams p{M_PI, -0.5};
  auto alpha = [&](double) { return p.alpha0; };
  CHECK_THROWS_AS(assemble(p, alpha, StripGrid{5.0, 0, 31}), GridError);
  CHECK_THROWS_AS(assemble(p, alpha, StripGrid{5.0, 10, 2}), GridError);
}
