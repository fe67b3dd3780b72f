#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ptwg/errors.hpp"
#include "ptwg/tau.hpp"

using namespace ptwg;

namespace {
constexpr double kBumpMean = 1.2069003224378765;
}

TEST_CASE("subcritical value for the calibrated mean-2 bump") {
  WaveguideParams p{M_PI, -0.5};
  PerturbationProfile beta = make_bump(0.0, 1.0, 2.0 / kBumpMean);
  TauResult t = tau(p, beta, 128);
  CHECK(t.regime == Regime::Subcritical);
  CHECK(t.value == doctest::Approx(-1.0233393735072602).epsilon(1e-8));
  CHECK(t.converged);
  CHECK(t.tail_bound > 0.0);
}

TEST_CASE("zero-mean pair value reproduces the calibrated positive tau") {
  WaveguideParams p{M_PI, -0.5};
  PerturbationProfile tilde({Piece{Shape::SmoothBump, 1.5, 1.0, 0.1222},
                             Piece{Shape::SmoothBump, -1.5, 1.0, -0.1222}});
  PerturbationProfile beta = profile_scale(tilde, 2.0);
  TauResult t = tau(p, beta, 128);
  CHECK(t.value == doctest::Approx(0.2027025337678091).epsilon(1e-8));
  CHECK(t.converged);
}

TEST_CASE("neumann series is negative and converged") {
  WaveguideParams p{M_PI, 0.0};
  TauResult t = tau(p, make_bump(0.0, 1.0, 1.0), 128);
  CHECK(t.regime == Regime::Neumann);
  CHECK(t.value < 0.0);
  CHECK(t.converged);
}

TEST_CASE("supercritical series is finite and converged") {
  WaveguideParams p{M_PI, 1.3};
  TauResult t = tau(p, make_bump(0.0, 1.0, 1.0), 128);
  CHECK(t.regime == Regime::Supercritical);
  CHECK(std::isfinite(t.value));
  CHECK(t.converged);
}

TEST_CASE("tail bound controls truncation level differences") {
  WaveguideParams p{M_PI, -0.5};
  PerturbationProfile beta = make_bump(0.3, 1.1, 1.0);
  TauResult t32 = tau(p, beta, 32);
  TauResult t64 = tau(p, beta, 64);
  CHECK(t64.tail_bound < t32.tail_bound);
  CHECK(std::abs(t64.value - t32.value) <= std::max(1e-10, t32.tail_bound));
}

TEST_CASE("parallel and serial series agree bitwise") {
  WaveguideParams p{M_PI, 0.7};
  PerturbationProfile beta = make_bump(-0.5, 1.4, 0.9);
  TauResult a = tau(p, beta, 48);
  TauResult b = tau_serial(p, beta, 48);
  CHECK(a.value == b.value);
  CHECK(a.tail_bound == b.tail_bound);
  CHECK(a.converged == b.converged);
}

TEST_CASE("half-angle degeneracy raises the numerical-margin error") {
  WaveguideParams p{M_PI, 1.0 - 1e-7};
  CHECK_THROWS_AS(tau(p, make_bump(0.0, 1.0, 1.0), 16), NumericalMargin);
}

TEST_CASE("degenerate boundary parameter is rejected") {
  WaveguideParams p{M_PI, 1.0};
  CHECK_THROWS_AS(tau(p, make_bump(0.0, 1.0, 1.0), 16), RegimeError);
}
