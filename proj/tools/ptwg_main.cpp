#include <cstdio>
#include <exception>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ptwg/config.hpp"
#include "ptwg/errors.hpp"
#include "ptwg/parallel.hpp"
#include "ptwg/predict.hpp"
#include "ptwg/report.hpp"
#include "ptwg/sweep.hpp"
#include "ptwg/tau.hpp"
#include "ptwg/transverse.hpp"
#include "ptwg/validate.hpp"

namespace {

using namespace ptwg;

int cmd_modes(const ExperimentConfig& cfg, const std::string& out) {
  ModeBasis basis = make_basis(cfg.params, cfg.J);
  emit(out, modes_csv(basis));
  return 0;
}

int cmd_tau(const ExperimentConfig& cfg, const std::string& out) {
  TauResult t = tau(cfg.params, cfg.beta, cfg.J);
  emit(out, tau_json(t));
  return 0;
}

double first_epsilon(const ExperimentConfig& cfg) {
  if (cfg.epsilons.empty())
    throw ConfigError("this mode needs an 'epsilon' or 'epsilons' entry");
  return cfg.epsilons.front();
}

int cmd_predict(const ExperimentConfig& cfg, const std::string& out) {
  Prediction pred = predict(cfg.params, cfg.beta, first_epsilon(cfg), cfg.J);
  emit(out, prediction_json(pred));
  return 0;
}

int cmd_fd(const ExperimentConfig& cfg, const std::string& out) {
  const double eps = cfg.epsilons.empty() ? 0.0 : cfg.epsilons.front();
  cplx sigma = cfg.fd.sigma;
  double decay_hint = 0.0;
  if (!cfg.fd.sigma_set) {
    if (eps <= 0.0)
      throw ConfigError("fd without epsilons needs an explicit fd.sigma_re");
    Prediction pred = predict(cfg.params, cfg.beta, eps, cfg.J);
    if (pred.exists != Existence::Yes)
      throw ConfigError(
          "no bound state predicted (case " + pred.case_tag +
          "); set fd.sigma_re/sigma_im to target a shift explicitly");
    sigma = {pred.lambda_of(eps), 0.0};
    decay_hint = pred.decay_rate(eps);
  }
  StripGrid grid = resolve_grid(cfg.grid, cfg.beta, decay_hint);
  RefinedSolve solve =
      solve_eigen_refined(cfg.params, eps, cfg.beta, grid, sigma,
                          cfg.grid.richardson, cfg.fd.tol, cfg.fd.max_iter);

  if (cfg.fd.dump_field) {
    std::ostringstream os;
    write_field(os, solve.best_pair(), solve.best_grid(), cfg.params);
    emit(out, os.str());
    return 0;
  }

  double decay = std::numeric_limits<double>::quiet_NaN();
  try {
    decay = decay_rate(solve.best_pair(), solve.best_grid(), cfg.params);
  } catch (const FitError&) {
  }
  std::ostringstream os;
  os << "{\n"
     << "  \"epsilon\": " << fmt17(eps) << ",\n"
     << "  \"lambda\": [" << fmt17(solve.lambda.real()) << ", "
     << fmt17(solve.lambda.imag()) << "],\n"
     << "  \"lambda_coarse\": [" << fmt17(solve.coarse.lambda.real()) << ", "
     << fmt17(solve.coarse.lambda.imag()) << "],\n"
     << "  \"residual_coarse\": " << fmt17(solve.coarse.residual) << ",\n"
     << "  \"iterations_coarse\": " << solve.coarse.iterations << ",\n";
  if (solve.refined) {
    os << "  \"lambda_fine\": [" << fmt17(solve.fine.lambda.real()) << ", "
       << fmt17(solve.fine.lambda.imag()) << "],\n"
       << "  \"residual_fine\": " << fmt17(solve.fine.residual) << ",\n"
       << "  \"iterations_fine\": " << solve.fine.iterations << ",\n";
  }
  os << "  \"decay_rate\": " << fmt17(decay) << ",\n"
     << "  \"symmetry_defect\": "
     << fmt17(symmetry_defect(solve.best_pair(), solve.best_grid())) << ",\n"
     << "  \"grid\": {\"L\": " << fmt17(solve.best_grid().L)
     << ", \"N1\": " << solve.best_grid().N1
     << ", \"N2\": " << solve.best_grid().N2 << "}\n"
     << "}\n";
  emit(out, os.str());
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg, const std::string& out) {
  SweepResult s = run_sweep(cfg);
  emit(out, sweep_csv(s.rows));
  std::cerr << s.summary();
  return 0;
}

int cmd_validate(const ValidateOptions& opts, const std::string& out) {
  ValidateReport report;
  report.all_pass = true;
  for (int id = 1; id <= kCriterionCount; ++id) {
    CriterionResult r = run_criterion(id, opts);
    report.results.push_back(r);
    report.all_pass = report.all_pass && r.pass;
    std::printf("[%2d/%d] %s  %s  (%.1f s)\n    %s\n", id, kCriterionCount,
                r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.runtime_ms / 1000.0, r.measured.c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", report.all_pass ? "validate: all criteria passed"
                                      : "validate: FAILURES present");
  if (!out.empty()) emit(out, report.table());
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spectral toolkit for a planar waveguide with an imaginary Robin "
      "boundary coupling"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  int jobs = 0;
  ValidateOptions vopts;

  auto* modes = app.add_subcommand("modes", "transverse mode table (CSV)");
  auto* tau_cmd = app.add_subcommand("tau", "coupling constant report (JSON)");
  auto* predict_cmd =
      app.add_subcommand("predict", "weak-coupling prediction (JSON)");
  auto* fd = app.add_subcommand(
      "fd", "finite-difference eigensolve on the truncated strip (JSON)");
  auto* sweep =
      app.add_subcommand("sweep", "prediction-vs-solver epsilon sweep (CSV)");
  auto* validate =
      app.add_subcommand("validate", "run the acceptance criteria suite");

  for (CLI::App* sub : {modes, tau_cmd, predict_cmd, fd, sweep}) {
    sub->add_option("--config", config_path, "experiment config (TOML)")
        ->required();
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--jobs", jobs, "worker threads (default: config/1)");
  }
  validate->add_option("--out", out_path, "also write the report table here");
  validate->add_option("--jobs", jobs, "worker threads");
  validate->add_option("--debug-gram-nodes", vopts.gram_quad_nodes,
                       "quadrature nodes for the pairing check (debug)");
  validate->add_flag("--debug-flip-boundary", vopts.flip_boundary_sign,
                     "flip the boundary sign at x2 = d (debug)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      if (jobs > 0) set_threads(jobs);
      return cmd_validate(vopts, out_path);
    }
    ExperimentConfig cfg = load_config(config_path);
    if (jobs > 0) {
      cfg.jobs = jobs;
      set_threads(jobs);
    }
    if (!out_path.empty()) cfg.output = out_path;
    if (modes->parsed()) return cmd_modes(cfg, cfg.output);
    if (tau_cmd->parsed()) return cmd_tau(cfg, cfg.output);
    if (predict_cmd->parsed()) return cmd_predict(cfg, cfg.output);
    if (fd->parsed()) return cmd_fd(cfg, cfg.output);
    if (sweep->parsed()) return cmd_sweep(cfg, cfg.output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
