#include "ptwg/sweep.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptwg/assemble.hpp"
#include "ptwg/errors.hpp"
#include "ptwg/parallel.hpp"

namespace ptwg {

namespace {

long long elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

RefinedSolve solve_eigen_refined(const WaveguideParams& p, double eps,
                                 const PerturbationProfile& beta,
                                 const StripGrid& coarse, cplx sigma,
                                 bool richardson, double tol, int maxit) {
  if (!beta.empty()) validate_support(coarse, beta.support_lo(),
                                      beta.support_hi());
  RefinedSolve out;
  out.grid_coarse = coarse;
  {
    BandedComplexMatrix A = assemble_perturbed(p, eps, beta, coarse);
    out.coarse = find_eigenpair(A, sigma, tol, maxit);
  }  // coarse matrix freed before the fine one is assembled
  out.lambda = out.coarse.lambda;
  if (richardson) {
    out.grid_fine = refine(coarse);
    BandedComplexMatrix A = assemble_perturbed(p, eps, beta, out.grid_fine);
    out.fine = find_eigenpair(A, out.coarse.lambda, tol, maxit);
    out.refined = true;
    out.lambda = (4.0 * out.fine.lambda - out.coarse.lambda) / 3.0;
  }
  return out;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  if (cfg.epsilons.empty())
    throw ConfigError("sweep requires a non-empty epsilons list");

  SweepResult out;
  out.prediction = predict(cfg.params, cfg.beta, cfg.epsilons.front(), cfg.J);
  const Prediction& pred = out.prediction;
  const bool exists = pred.exists == Existence::Yes;
  const double mu0sq = pred.lambda_coeffs[0];

  if (exists) {
    out.fit_order = pred.k_coeffs[0] != 0.0 ? 2 : 4;
    const double k = out.fit_order == 2 ? pred.k_coeffs[0] : pred.k_coeffs[1];
    out.fit_target = k * k;
  }

  auto solve_row = [&](size_t idx) -> SweepRow {
    const auto t0 = std::chrono::steady_clock::now();
    SweepRow row;
    row.epsilon = cfg.epsilons[idx];
    row.lambda_pred = {kNaN, kNaN};
    row.lambda_fd = {kNaN, kNaN};
    row.abs_err = row.coeff_fit = row.decay_pred = row.decay_fd = kNaN;
    if (!exists) {
      row.absent = true;
      row.runtime_ms = elapsed_ms(t0);
      return row;
    }
    const double eps = row.epsilon;
    row.lambda_pred = {pred.lambda_of(eps), 0.0};
    row.decay_pred = pred.decay_rate(eps);
    try {
      const StripGrid grid = resolve_grid(cfg.grid, cfg.beta, row.decay_pred);
      const cplx sigma =
          cfg.fd.sigma_set ? cfg.fd.sigma : row.lambda_pred;
      RefinedSolve solve =
          solve_eigen_refined(cfg.params, eps, cfg.beta, grid, sigma,
                              cfg.grid.richardson, cfg.fd.tol,
                              cfg.fd.max_iter);
      row.lambda_fd = solve.lambda;
      row.abs_err = std::abs(row.lambda_pred - row.lambda_fd);
      row.coeff_fit = (mu0sq - row.lambda_fd.real()) /
                      std::pow(eps, out.fit_order);
      row.converged = true;
      try {
        row.decay_fd = decay_rate(solve.best_pair(), solve.best_grid(),
                                  cfg.params);
      } catch (const FitError&) {
        row.decay_fd = kNaN;
      }
    } catch (const MaxIterations&) {
    } catch (const SingularShift&) {
    } catch (const GridError&) {
    }
    row.runtime_ms = elapsed_ms(t0);
    return row;
  };

  const size_t n = cfg.epsilons.size();
  if (cfg.jobs > 1) {
    set_threads(cfg.jobs);
    out.rows = parallel_map<SweepRow>(n, solve_row);
  } else {
    out.rows.reserve(n);
    for (size_t i = 0; i < n; ++i) out.rows.push_back(solve_row(i));
  }

  out.fit_coeff = kNaN;
  for (auto it = out.rows.rbegin(); it != out.rows.rend(); ++it) {
    if (it->converged) {
      out.fit_coeff = it->coeff_fit;
      break;
    }
  }
  return out;
}

std::string SweepResult::summary() const {
  std::ostringstream os;
  os << "case: " << prediction.case_tag
     << " (exists=" << existence_name(prediction.exists)
     << ", regime=" << regime_name(prediction.regime) << ")\n";
  int converged = 0, absent = 0;
  for (const SweepRow& r : rows) {
    converged += r.converged ? 1 : 0;
    absent += r.absent ? 1 : 0;
  }
  os << "rows: " << rows.size() << " total, " << converged << " converged, "
     << absent << " absent\n";
  if (fit_order != 0) {
    os << "fit: (mu0^2 - Re lambda_fd) / eps^" << fit_order << " vs target "
       << fmt17(fit_target);
    if (std::isfinite(fit_coeff)) {
      os << "; finest converged coeff " << fmt17(fit_coeff) << " (ratio "
         << fmt17(fit_coeff / fit_target) << ")";
    } else {
      os << "; no converged rows";
    }
    os << "\n";
  } else {
    os << "fit: skipped (no bound state predicted)\n";
  }
  return os.str();
}

}  // namespace ptwg
