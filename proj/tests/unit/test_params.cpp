#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ptwg/errors.hpp"
#include "ptwg/params.hpp"

using namespace ptwg;

TEST_CASE("regime classification by alpha0 d / pi") {
  CHECK(WaveguideParams{M_PI, 0.0}.regime() == Regime::Neumann);
  CHECK(WaveguideParams{M_PI, 0.5}.regime() == Regime::Subcritical);
  CHECK(WaveguideParams{M_PI, -0.5}.regime() == Regime::Subcritical);
  CHECK(WaveguideParams{M_PI, 1.5}.regime() == Regime::Supercritical);
  CHECK(WaveguideParams{M_PI, -2.7}.regime() == Regime::Supercritical);
  CHECK(WaveguideParams{M_PI, 1.0}.regime() == Regime::Forbidden);
  CHECK(WaveguideParams{M_PI, -3.0}.regime() == Regime::Forbidden);
  CHECK(WaveguideParams{1.0, M_PI}.regime() == Regime::Forbidden);
}

TEST_CASE("threshold frequency follows the regime") {
  CHECK(WaveguideParams{M_PI, 0.0}.mu0() == 0.0);
  CHECK(WaveguideParams{M_PI, 0.5}.mu0() == doctest::Approx(0.5));
  CHECK(WaveguideParams{M_PI, -0.5}.mu0() == doctest::Approx(0.5));
  CHECK(WaveguideParams{M_PI, 1.5}.mu0() == doctest::Approx(1.0));
  CHECK(WaveguideParams{2.0, 3.0}.mu0() == doctest::Approx(M_PI / 2.0));
}

TEST_CASE("degenerate boundary parameter detection near integers") {
  CHECK(WaveguideParams{M_PI, 1.0 + 5e-9}.regime() == Regime::Forbidden);
  CHECK(WaveguideParams{M_PI, 1.0 + 1e-7}.regime() == Regime::Supercritical);
  // Only exact zero is the Neumann regime; arbitrarily small nonzero
  // parameters stay subcritical with threshold |alpha0|^2.
  CHECK(WaveguideParams{M_PI, 5e-9}.regime() == Regime::Subcritical);
  CHECK(WaveguideParams{M_PI, 0.0}.regime() == Regime::Neumann);
}

TEST_CASE("require_valid rejects bad parameters") {
  CHECK_THROWS_AS(require_valid(WaveguideParams{-1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(require_valid(WaveguideParams{0.0, 0.5}), DomainError);
  CHECK_THROWS_AS(require_valid(WaveguideParams{M_PI, 2.0}), RegimeError);
  CHECK_NOTHROW(require_valid(WaveguideParams{M_PI, 0.5}));
  CHECK_NOTHROW(require_valid(WaveguideParams{M_PI, 0.0}));
}

TEST_CASE("regime names are stable strings") {
  CHECK(std::string(regime_name(Regime::Neumann)) == "neumann");
  CHECK(std::string(regime_name(Regime::Subcritical)) == "subcritical");
  CHECK(std::string(regime_name(Regime::Supercritical)) == "supercritical");
}
