#include "ptwg/params.hpp"

#include <cmath>
#include <string>

#include "ptwg/errors.hpp"

namespace ptwg {

Regime WaveguideParams::regime() const {
  if (!(d > 0.0)) throw DomainError("strip width must be positive");
  double q = std::abs(alpha0) * d / M_PI;
  if (q == 0.0) return Regime::Neumann;
  double nearest = std::round(q);
  if (nearest >= 1.0 && std::abs(q - nearest) < 1e-8) return Regime::Forbidden;
  return q < 1.0 ? Regime::Subcritical : Regime::Supercritical;
}

double WaveguideParams::mu0() const {
  switch (regime()) {
    case Regime::Neumann:
      return 0.0;
    case Regime::Subcritical:
      return std::abs(alpha0);
    case Regime::Supercritical:
      return M_PI / d;
    default:
      throw RegimeError("no spectral threshold: alpha0*d/pi = " +
                        std::to_string(alpha0 * d / M_PI) +
                        " is a nonzero integer");
  }
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Neumann:
      return "neumann";
    case Regime::Subcritical:
      return "subcritical";
    case Regime::Supercritical:
      return "supercritical";
    default:
      return "forbidden";
  }
}

void require_valid(const WaveguideParams& p) {
  if (!(p.d > 0.0)) throw DomainError("strip width must be positive");
  if (p.regime() == Regime::Forbidden)
    throw RegimeError("degenerate boundary parameter: alpha0*d/pi = " +
                      std::to_string(p.alpha0 * p.d / M_PI) +
                      " is a nonzero integer");
}

}  // namespace ptwg
