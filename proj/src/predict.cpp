#include "ptwg/predict.hpp"

#include <cmath>

#include "ptwg/errors.hpp"

namespace ptwg {

const char* existence_name(Existence e) {
  switch (e) {
    case Existence::Yes:
      return "yes";
    case Existence::No:
      return "no";
    default:
      return "inconclusive";
  }
}

double Prediction::lambda_of(double eps) const {
  double k = eps * k_coeffs[0] + eps * eps * k_coeffs[1];
  return lambda_coeffs[0] - k * k;
}

double Prediction::lambda_upto(double eps, int order) const {
  double lam = lambda_coeffs[0];
  if (order >= 2) lam += eps * eps * lambda_coeffs[1];
  if (order >= 3) lam += eps * eps * eps * lambda_coeffs[2];
  if (order >= 4) lam += eps * eps * eps * eps * lambda_coeffs[3];
  return lam;
}

double Prediction::decay_rate(double eps) const {
  return std::sqrt(std::max(0.0, lambda_coeffs[0] - lambda_of(eps)));
}

Prediction predict(const WaveguideParams& p, const PerturbationProfile& beta,
                   double epsilon, int J, const QuadratureSpec& quad) {
  require_valid(p);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");

  Prediction out;
  out.regime = p.regime();
  out.epsilon = epsilon;
  double mu0 = p.mu0();
  out.lambda_coeffs[0] = mu0 * mu0;

  ProfileMoments mom = profile_moments(beta, quad);
  out.mean = mom.mean;
  out.tau_result = tau(p, beta, J, quad);
  double tv = out.tau_result.value;
  double tau_tol = std::max(1e-10, out.tau_result.tail_bound);
  bool zero_mean = std::abs(mom.mean) < 1e-10 * std::sqrt(mom.l2norm_sq);

  auto finish = [&](double k1, double k2) {
    out.k_coeffs[0] = k1;
    out.k_coeffs[1] = k2;
    out.lambda_coeffs[1] = -k1 * k1;
    out.lambda_coeffs[2] = -2.0 * k1 * k2;
    out.lambda_coeffs[3] = -k2 * k2;
  };

  switch (out.regime) {
    case Regime::Neumann:
      out.case_tag = "th2.0";
      out.exists = Existence::No;
      finish(0.0, tv);
      break;
    case Regime::Subcritical: {
      if (!zero_mean) {
        double k1 = -p.alpha0 * mom.mean;
        finish(k1, tv);
        if (k1 > 0.0) {
          out.case_tag = "th2.1-i";
          out.exists = Existence::Yes;
        } else {
          out.case_tag = "th2.1-ii";
          out.exists = Existence::No;
        }
      } else {
        finish(0.0, tv);
        if (std::abs(tv) <= tau_tol) {
          out.case_tag = tv >= 0.0 ? "th2.1-iii" : "th2.1-iv";
          out.exists = Existence::Inconclusive;
        } else if (tv > 0.0) {
          out.case_tag = "th2.1-iii";
          out.exists = Existence::Yes;
        } else {
          out.case_tag = "th2.1-iv";
          out.exists = Existence::No;
        }
      }
      break;
    }
    default: {  // Supercritical
      finish(0.0, tv);
      if (std::abs(tv) <= tau_tol) {
        out.case_tag = tv >= 0.0 ? "th2.2-i" : "th2.2-ii";
        out.exists = Existence::Inconclusive;
      } else if (tv > 0.0) {
        out.case_tag = "th2.2-i";
        out.exists = Existence::Yes;
      } else {
        out.case_tag = "th2.2-ii";
        out.exists = Existence::No;
      }
      break;
    }
  }
  return out;
}

}  // namespace ptwg
