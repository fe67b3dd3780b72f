#include "ptwg/tau.hpp"

#include <cmath>
#include <limits>

#include "ptwg/errors.hpp"
#include "ptwg/transverse.hpp"

namespace ptwg {

namespace {

// tan((alpha0 d + j pi)/2) without evaluating tan near its poles.
double tan_shifted(double alpha0, double d, int j) {
  double half = alpha0 * d / 2.0;
  return (j % 2 == 0) ? std::tan(half) : -1.0 / std::tan(half);
}

}  // namespace

static TauResult tau_impl(const WaveguideParams& p,
                          const PerturbationProfile& beta, int J,
                          const QuadratureSpec& quad, bool parallel) {
  require_valid(p);
  if (J < 2) throw DomainError("series truncation must be at least 2");
  Regime r = p.regime();
  ProfileMoments mom = profile_moments(beta, quad);
  double l2 = mom.l2norm_sq;
  double d = p.d, a0 = p.alpha0;

  std::vector<int> modes;
  std::vector<double> coeff;
  double constant = 0.0;
  std::vector<int> const_modes;  // brackets entering the constant part

  // Tail bound after the first `terms` series terms.
  auto tail_bound = [&](int terms) -> double {
    if (r == Regime::Subcritical) {
      double a = std::abs(a0) * d / M_PI;  // in (0,1)
      double T = std::max(std::abs(std::tan(a0 * d / 2.0)),
                          std::abs(1.0 / std::tan(a0 * d / 2.0)));
      double Jn = terms;  // terms j = 1..terms used
      double j1 = Jn + 1.0;
      double amp = (2.0 * std::abs(a0) / d) * T * l2 * (d / M_PI) * (d / M_PI);
      return amp * (j1 * j1 / (j1 * j1 - a * a)) * (0.5 / a) *
             std::log((Jn + a) / (Jn - a));
    }
    if (r == Regime::Supercritical) {
      double a = std::abs(a0) * d / M_PI;  // > 1
      double mu0 = M_PI / d, mu1 = std::abs(a0);
      double K4 = 8.0 * M_PI * M_PI / ((mu1 * mu1 - mu0 * mu0) * std::pow(d, 4));
      double Jn = terms;  // even modes 2j, j = 1..terms
      if (2.0 * Jn <= a + 1.0) return std::numeric_limits<double>::infinity();
      return K4 * l2 * (a * a / (a * a - 1.0)) * (0.25 / a) *
             std::log((2.0 * Jn + a) / (2.0 * Jn - a));
    }
    // Neumann: odd modes 2j+1, j = 0..terms-1; |term| <= 4 l2 d / (pi^3 m^3).
    double M = 2.0 * terms + 1.0;  // first dropped odd mode is M
    return (4.0 * l2 * d / std::pow(M_PI, 3)) * (0.25 / ((M - 1.0) * (M - 1.0)));
  };

  if (r == Regime::Subcritical) {
    double margin = M_PI / 2.0 - std::abs(a0) * d / 2.0;
    if (margin < 1e-6)
      throw NumericalMargin(
          "tan factor within 1e-6 of its pole; series coefficients unreliable");
    double mu0 = std::abs(a0);
    constant = 0.0;  // filled from <beta v_0> below
    const_modes.push_back(0);
    for (int j = 1; j <= J; ++j) {
      double mu = j * M_PI / d;
      modes.push_back(j);
      coeff.push_back((2.0 * a0 / d) * mu * mu / (mu * mu - mu0 * mu0) *
                      tan_shifted(a0, d, j));
    }
  } else if (r == Regime::Supercritical) {
    double mu0 = M_PI / d, mu1 = std::abs(a0);
    const_modes.push_back(1);
    for (int j = 1; j <= J; ++j) {
      double m2j = 2.0 * j * M_PI / d;
      modes.push_back(2 * j);
      coeff.push_back(8.0 * M_PI * M_PI / ((mu1 * mu1 - mu0 * mu0) * std::pow(d, 4)) *
                      m2j * m2j / (m2j * m2j - mu1 * mu1));
    }
  } else {  // Neumann
    for (int j = 0; j < J; ++j) {
      double mu = (2 * j + 1) * M_PI / d;
      modes.push_back(2 * j + 1);
      coeff.push_back(-4.0 / (mu * d * d));
    }
  }

  // Evaluate all needed brackets in one batch.
  std::vector<int> all = const_modes;
  all.insert(all.end(), modes.begin(), modes.end());
  auto brs = parallel ? brackets_batch(p, beta, all, quad)
                      : brackets_batch_serial(p, beta, all, quad);

  size_t off = const_modes.size();
  if (r == Regime::Subcritical) {
    constant = 2.0 * a0 * a0 * brs[0].value;
  } else if (r == Regime::Supercritical) {
    double mu0 = M_PI / d, mu1 = std::abs(a0);
    double cot = 1.0 / std::tan(a0 * d / 2.0);
    constant = 2.0 * a0 * M_PI * M_PI * cot /
               ((mu1 * mu1 - mu0 * mu0) * std::pow(d, 3)) * brs[0].value;
  }

  auto partial = [&](int terms) {
    double s = constant;
    for (int i = 0; i < terms; ++i) s += coeff[i] * brs[off + i].value;
    return s;
  };

  int terms = static_cast<int>(modes.size());
  double full = partial(terms);
  double half = partial(terms / 2);
  double tb = tail_bound(terms);
  double tb_half = tail_bound(terms / 2);

  TauResult out;
  out.value = full;
  out.regime = r;
  out.J = J;
  out.tail_bound = tb;
  out.converged = std::abs(full - half) < std::max(1e-10, tb_half);
  return out;
}

TauResult tau(const WaveguideParams& p, const PerturbationProfile& beta, int J,
              const QuadratureSpec& quad) {
  return tau_impl(p, beta, J, quad, true);
}

TauResult tau_serial(const WaveguideParams& p, const PerturbationProfile& beta,
                     int J, const QuadratureSpec& quad) {
  return tau_impl(p, beta, J, quad, false);
}

}  // namespace ptwg
