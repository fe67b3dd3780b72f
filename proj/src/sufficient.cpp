#include "ptwg/sufficient.hpp"

#include <cmath>

#include "ptwg/errors.hpp"
#include "ptwg/kernels.hpp"
#include "ptwg/transverse.hpp"

namespace ptwg {

ZeroMeanPositivity check_th2_3(const WaveguideParams& p,
                               const PerturbationProfile& betatilde, double l,
                               const QuadratureSpec& quad) {
  require_valid(p);
  if (p.regime() != Regime::Subcritical)
    throw PreconditionError("zero-mean positivity test needs 0 < |alpha0| < pi/d");
  if (!(l > 0.0)) throw DomainError("scale factor must be positive");
  ProfileMoments mom = profile_moments(betatilde, quad);
  if (std::abs(mom.mean) >= 1e-10 * std::sqrt(mom.l2norm_sq))
    throw PreconditionError("profile must have zero mean");

  // w(x) = integral sgn(x - t) betatilde(t) dt = 2 integral_a^x betatilde
  // for zero-mean input; it vanishes outside the support.
  double a = betatilde.support_lo();
  auto breaks = betatilde.breakpoints();
  auto w = [&](double x) {
    if (x <= a) return 0.0;
    auto sub = split_at(breaks, x);
    std::vector<double> upto;
    for (double b : sub)
      if (b <= x) upto.push_back(b);
    if (upto.back() < x) upto.push_back(x);
    return 2.0 * integrate_panels([&](double t) { return betatilde(t); }, upto,
                                  quad);
  };
  double left =
      integrate_panels([&](double x) { return w(x) * w(x); }, breaks, quad);

  double d = p.d, a0 = p.alpha0;
  double mu0 = std::abs(a0), mu1 = M_PI / d;
  double bracket = mu1 * mu1 / std::pow(mu1 * mu1 - mu0 * mu0, 2) +
                   d * d / (16.0 * M_PI * M_PI) + d * d / 48.0;
  double right = (4.0 / std::tan(a0 * d / 2.0)) / (l * l * a0 * d) * bracket *
                 mom.l2norm_sq;
  return {left >= right, left, right};
}

SupercriticalPositivity check_th2_4(const WaveguideParams& p,
                                    const PerturbationProfile& beta,
                                    const QuadratureSpec& quad) {
  require_valid(p);
  if (p.regime() != Regime::Supercritical)
    throw PreconditionError("supercritical positivity test needs |alpha0| > pi/d");
  double d = p.d, a0 = p.alpha0;
  double mu1 = std::abs(a0);
  int m = 0;
  while (2.0 * (m + 1) * M_PI / d < mu1) ++m;

  double bv1 = bracket_beta_vj(p, beta, 1, quad).value;
  double lhs = a0 * bv1 / std::tan(a0 * d / 2.0);
  double rhs = 0.0;
  for (int j = 1; j <= m; ++j) {
    double m2j = 2.0 * j * M_PI / d;
    double bv = bracket_beta_vj(p, beta, 2 * j, quad).value;
    rhs += (4.0 / d) * m2j * m2j * bv / (mu1 * mu1 - m2j * m2j);
  }
  return {lhs >= rhs, lhs, rhs, m};
}

PerturbationProfile construct_beta_for_th2_4(const WaveguideParams& p,
                                             double amplitude) {
  require_valid(p);
  if (p.regime() != Regime::Supercritical)
    throw PreconditionError("construction applies to the supercritical regime");
  // Norms of the unit smooth bump and its derivative.
  PerturbationProfile b = make_bump(0.0, 1.0, 1.0);
  double c0 = profile_moments(b).l2norm_sq;
  double c1 = integrate_panels(
      [&](double x) {
        double v = b.eval(x, 1);
        return v * v;
      },
      b.breakpoints());
  // v = A b(x/w) needs 3||v'||^2 > (7 pi^2/d^2)||v||^2, i.e.
  // w^2 < 3 c1 d^2 / (7 pi^2 c0); take half the limiting width.
  double w = 0.5 * (p.d / M_PI) * std::sqrt(3.0 * c1 / (7.0 * c0));
  double mu0 = M_PI / p.d;
  std::vector<Piece> pieces;
  pieces.push_back({Shape::BumpD2, 0.0, w, -amplitude / (w * w), {}});
  pieces.push_back({Shape::SmoothBump, 0.0, w, 3.0 * mu0 * mu0 * amplitude, {}});
  return PerturbationProfile(std::move(pieces));
}

}  // namespace ptwg
