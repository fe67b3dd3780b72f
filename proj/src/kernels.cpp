#include "ptwg/kernels.hpp"

#include <cmath>

#include "ptwg/banded.hpp"
#include "ptwg/errors.hpp"
#include "ptwg/parallel.hpp"
#include "ptwg/transverse.hpp"

namespace ptwg {

double kappa_j(const WaveguideParams& p, int j) {
  if (j < 1) throw DomainError("kappa is defined for j >= 1");
  double mu0 = mu_j(p, 0), mu = mu_j(p, j);
  double k2 = mu * mu - mu0 * mu0;
  if (!(k2 > 0.0))
    throw DomainError("mode does not decay: mu_j^2 <= mu_0^2");
  return std::sqrt(k2);
}

double v_j_eval(const WaveguideParams& p, const PerturbationProfile& beta,
                int j, double x1, const QuadratureSpec& quad) {
  require_valid(p);
  if (beta.empty()) return 0.0;
  auto breaks = split_at(beta.breakpoints(), x1);
  if (j == 0) {
    return -0.5 * integrate_panels(
                      [&](double t) { return std::abs(x1 - t) * beta(t); },
                      breaks, quad);
  }
  double kap = kappa_j(p, j);
  return integrate_panels(
             [&](double t) { return std::exp(-kap * std::abs(x1 - t)) * beta(t); },
             breaks, quad) /
         (2.0 * kap);
}

BracketValue bracket_beta_vj(const WaveguideParams& p,
                             const PerturbationProfile& beta, int j,
                             const QuadratureSpec& quad) {
  require_valid(p);
  BracketValue out{j, 0.0, BracketMethod::Quadrature, 0.0};
  if (beta.empty()) return out;
  ProfileMoments mom = profile_moments(beta, quad);
  if (j >= 1) {
    double mu0 = mu_j(p, 0), mu = mu_j(p, j);
    out.tail_error = mom.l2norm_sq / (mu * mu - mu0 * mu0);
  }
  auto breaks = beta.breakpoints();
  out.value = integrate_panels(
      [&](double x) { return beta(x) * v_j_eval(p, beta, j, x, quad); },
      breaks, quad);
  return out;
}

BracketValue bracket_beta_vj_ode(const WaveguideParams& p,
                                 const PerturbationProfile& beta, int j,
                                 int grid_points) {
  require_valid(p);
  BracketValue out{j, 0.0, BracketMethod::OdeOracle, 0.0};
  if (beta.empty()) return out;
  if (grid_points % 2 == 0) ++grid_points;  // Simpson needs odd point count

  double R = std::max(std::abs(beta.support_lo()), std::abs(beta.support_hi())) + 10.0;

  auto solve_level = [&](int n) {
    double h = 2.0 * R / (n - 1);
    std::vector<double> bb(n);
    for (int i = 0; i < n; ++i) bb[i] = beta(-R + i * h);
    BandedComplexMatrix A(n, 2, 2);
    std::vector<cplx> rhs(n);
    if (j == 0) {
      // -v'' = beta; outside the support v is linear with slope +-mean/2,
      // pinned on the right by the exact kernel value.
      ProfileMoments mom = profile_moments(beta);
      double m1 = integrate_panels([&](double t) { return t * beta(t); },
                                   beta.breakpoints());
      for (int i = 1; i + 1 < n; ++i) {
        A.at(i, i - 1) = 1.0 / (h * h);
        A.at(i, i) = -2.0 / (h * h);
        A.at(i, i + 1) = 1.0 / (h * h);
        rhs[i] = -bb[i];
      }
      A.at(0, 0) = -1.5 / h;
      A.at(0, 1) = 2.0 / h;
      A.at(0, 2) = -0.5 / h;
      rhs[0] = mom.mean / 2.0;
      A.at(n - 1, n - 1) = 1.0;
      rhs[n - 1] = -0.5 * (R * mom.mean - m1);
    } else {
      double kap = kappa_j(p, j);
      for (int i = 1; i + 1 < n; ++i) {
        A.at(i, i - 1) = -1.0 / (h * h);
        A.at(i, i) = 2.0 / (h * h) + kap * kap;
        A.at(i, i + 1) = -1.0 / (h * h);
        rhs[i] = bb[i];
      }
      // Transparent closures: v ~ e^{+kap x} on the left, e^{-kap x} right.
      A.at(0, 0) = -1.5 / h - kap;
      A.at(0, 1) = 2.0 / h;
      A.at(0, 2) = -0.5 / h;
      rhs[0] = 0.0;
      A.at(n - 1, n - 3) = 0.5 / h;
      A.at(n - 1, n - 2) = -2.0 / h;
      A.at(n - 1, n - 1) = 1.5 / h + kap;
      rhs[n - 1] = 0.0;
    }
    BandedLU lu = band_lu_factor(std::move(A), cplx(0.0, 0.0));
    band_lu_solve(lu, rhs);
    // Simpson integral of beta * v.
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      s += w * bb[i] * rhs[i].real();
    }
    return s * h / 3.0;
  };

  double coarse = solve_level(grid_points);
  double fine = solve_level(2 * grid_points - 1);
  out.value = (4.0 * fine - coarse) / 3.0;
  out.tail_error = std::abs(fine - coarse) / 3.0;
  return out;
}

namespace {

std::vector<BracketValue> batch_impl(const WaveguideParams& p,
                                     const PerturbationProfile& beta,
                                     const std::vector<int>& js,
                                     const QuadratureSpec& quad,
                                     bool parallel) {
  auto work = [&](std::ptrdiff_t i) {
    return bracket_beta_vj(p, beta, js[static_cast<size_t>(i)], quad);
  };
  auto n = static_cast<std::ptrdiff_t>(js.size());
  return parallel ? parallel_map<BracketValue>(n, work)
                  : serial_map<BracketValue>(n, work);
}

}  // namespace

std::vector<BracketValue> brackets_batch(const WaveguideParams& p,
                                         const PerturbationProfile& beta,
                                         const std::vector<int>& js,
                                         const QuadratureSpec& quad) {
  return batch_impl(p, beta, js, quad, true);
}

std::vector<BracketValue> brackets_batch_serial(
    const WaveguideParams& p, const PerturbationProfile& beta,
    const std::vector<int>& js, const QuadratureSpec& quad) {
  return batch_impl(p, beta, js, quad, false);
}

}  // namespace ptwg
