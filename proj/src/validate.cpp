#include "ptwg/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "ptwg/assemble.hpp"
#include "ptwg/eigen.hpp"
#include "ptwg/errors.hpp"
#include "ptwg/kernels.hpp"
#include "ptwg/predict.hpp"
#include "ptwg/profile.hpp"
#include "ptwg/resolvent.hpp"
#include "ptwg/sufficient.hpp"
#include "ptwg/sweep.hpp"
#include "ptwg/tau.hpp"
#include "ptwg/transverse.hpp"

namespace ptwg {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Mean of the unit smooth bump; dividing an amplitude by it dials <beta>.
constexpr double kBumpMean = 1.2069003224378765;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// --------------------------------------------------------------------------
// 1. Biorthonormality of the transverse mode pairing across regimes.
// --------------------------------------------------------------------------
bool crit_biortho(const ValidateOptions& opts, std::string& m) {
  const int J = 15;
  double worst = 0.0;
  for (double d : {1.0, kPi}) {
    for (double a : {0.3, 0.9 * kPi / d, 1.7 * kPi / d}) {
      WaveguideParams p{d, a};
      ModeBasis basis = make_basis(p, J);
      std::vector<cplx> G = biortho_gram(basis, opts.gram_quad_nodes);
      const int n = J + 1;
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          const cplx want = i == k ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
          worst = std::max(worst, std::abs(G[i * n + k] - want));
        }
      }
    }
  }
  m = "max |pairing - identity| = " + sci(worst) + " (require < 1e-10)";
  return worst < 1e-10;
}

// --------------------------------------------------------------------------
// 2. Second-order accuracy of the discretized transverse operator applied
//    to the analytic modes: halving h must shrink the residual 4x +- 20%.
// --------------------------------------------------------------------------
double transverse_residual(const WaveguideParams& p, int N2, int j,
                           bool flip) {
  BandedComplexMatrix A = assemble_transverse(p, p.alpha0, N2, flip);
  const int n = N2 + 2;
  const double mu = mu_j(p, j);
  std::vector<cplx> u(n);
  for (int idx = 0; idx < n; ++idx)
    u[idx] = psi_eval(p, j, p.d * idx / (N2 + 1));
  std::vector<cplx> r = A.apply(u);
  double worst = 0.0;
  for (int idx = 0; idx < n; ++idx)
    worst = std::max(worst, std::abs(r[idx] - mu * mu * u[idx]));
  return worst;
}

bool crit_residual_order(const ValidateOptions& opts, std::string& m) {
  double lo = 1e300, hi = 0.0;
  for (double a : {0.6, 1.4}) {
    WaveguideParams p{kPi, a};
    for (int j = 0; j <= 5; ++j) {
      const double r1 = transverse_residual(p, 199, j,
                                            opts.flip_boundary_sign);
      const double r2 = transverse_residual(p, 399, j,
                                            opts.flip_boundary_sign);
      const double ratio = r1 / r2;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  m = "h->h/2 residual ratios in [" + sci(lo) + ", " + sci(hi) +
      "] (require within [3.2, 4.8])";
  return lo >= 3.2 && hi <= 4.8;
}

// --------------------------------------------------------------------------
// 3. Resolvent reconstruction: the discretized operator applied to the
//    mode-expansion solution reproduces the source in the strip interior.
// --------------------------------------------------------------------------
bool crit_resolvent(const ValidateOptions&, std::string& m) {
  WaveguideParams p{kPi, -0.5};
  StripGrid g{12.0, 479, 95};
  const cplx z{-1.0, 0.0};
  PerturbationProfile envelope = make_bump(0.0, 1.5, 1.0);
  auto F = [&](double x1, double x2) -> cplx {
    const double b = envelope(x1);
    if (b == 0.0) return {0.0, 0.0};
    return b * (psi_eval(p, 0, x2) + 0.3 * psi_eval(p, 2, x2));
  };

  std::vector<double> x1s(static_cast<size_t>(g.N1));
  for (int i = 1; i <= g.N1; ++i) x1s[static_cast<size_t>(i - 1)] = g.x1(i);
  std::vector<double> x2s(static_cast<size_t>(g.rows()));
  for (int j = 0; j < g.rows(); ++j)
    x2s[static_cast<size_t>(j)] = g.x2(j, p.d);

  ResolventField field = resolvent_apply(p, z, F, SupportBox{-1.5, 1.5}, 16,
                                         x1s, x2s);
  BandedComplexMatrix A =
      assemble(p, [&](double) { return p.alpha0; }, g);
  std::vector<cplx> Au = A.apply(field.values);

  // Defect (A - z) u - F over the interior mask: the boundary-closure rows
  // and three columns nearest each Dirichlet wall are excluded.
  const int rows = g.rows();
  double num = 0.0, den = 0.0;
  for (int i = 4; i <= g.N1 - 3; ++i) {
    for (int j = 1; j <= g.N2; ++j) {
      const size_t idx = static_cast<size_t>(i - 1) * rows + j;
      const cplx lhs = Au[idx] - z * field.values[idx];
      const cplx f = F(g.x1(i), g.x2(j, p.d));
      num += std::norm(lhs - f);
      den += std::norm(f);
    }
  }
  const double rel = std::sqrt(num / den);
  m = "interior relative L2 defect = " + sci(rel) + " (require < 1e-3)";
  return rel < 1e-3;
}

// --------------------------------------------------------------------------
// 4. Kernel brackets: quadrature agrees with the independent ODE oracle;
//    positivity and the certified magnitude bound hold for j <= 40.
// --------------------------------------------------------------------------
bool crit_brackets(const ValidateOptions&, std::string& m) {
  WaveguideParams p{kPi, -0.5};
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> Uc(-1.5, 1.5);
  std::uniform_real_distribution<double> Uw(0.6, 1.8);
  std::uniform_real_distribution<double> Ua(0.5, 2.0);

  double worst_rel = 0.0;
  double min_value = 1e300;    // over j >= 1 (positivity)
  double worst_excess = -1e300;  // value minus certified bound
  for (int trial = 0; trial < 5; ++trial) {
    const double amp = Ua(rng) * (trial % 2 == 0 ? 1.0 : -1.0);
    PerturbationProfile beta = make_bump(Uc(rng), Uw(rng), amp);
    for (int j = 0; j <= 10; ++j) {
      BracketValue q = bracket_beta_vj(p, beta, j);
      BracketValue o = bracket_beta_vj_ode(p, beta, j);
      const double rel =
          std::abs(q.value - o.value) / std::max(std::abs(o.value), 1e-14);
      worst_rel = std::max(worst_rel, rel);
    }
    std::vector<int> js;
    for (int j = 1; j <= 40; ++j) js.push_back(j);
    for (const BracketValue& q : brackets_batch(p, beta, js)) {
      min_value = std::min(min_value, q.value);
      worst_excess = std::max(worst_excess, q.value - q.tail_error);
    }
  }
  m = "max oracle mismatch = " + sci(worst_rel) +
      " (require < 1e-6); min bracket = " + sci(min_value) +
      " (require > 0); max bound excess = " + sci(worst_excess) +
      " (require <= 0)";
  return worst_rel < 1e-6 && min_value > 0.0 && worst_excess <= 1e-12;
}

// --------------------------------------------------------------------------
// 5. Coupling-series truncation: doubling J moves the value by less than the
//    certified tail in every regime; the Neumann series is always negative.
// --------------------------------------------------------------------------
bool crit_tau(const ValidateOptions&, std::string& m) {
  std::ostringstream mm;
  bool ok = true;

  struct RegimeCase {
    const char* label;
    double alpha0;
  };
  for (RegimeCase c : {RegimeCase{"neumann", 0.0},
                       RegimeCase{"subcritical", -0.5},
                       RegimeCase{"supercritical", 1.3}}) {
    WaveguideParams p{kPi, c.alpha0};
    TauResult t = tau(p, make_bump(0.0, 1.0, 1.0), 128);
    ok = ok && t.converged;
    mm << c.label << ": tau=" << sci(t.value) << " tail=" << sci(t.tail_bound)
       << (t.converged ? "" : " NOT-CONVERGED") << "; ";
  }

  WaveguideParams pn{kPi, 0.0};
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> Uc(-2.0, 2.0);
  std::uniform_real_distribution<double> Uw(0.5, 2.0);
  std::uniform_real_distribution<double> Ua(0.3, 2.0);
  std::uniform_int_distribution<int> Ushape(0, 1);
  std::uniform_int_distribution<int> Usign(0, 1);
  double max_neumann = -1e300;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Piece> pieces;
    const int count = 1 + trial % 2;
    for (int k = 0; k < count; ++k) {
      Piece piece;
      piece.shape = Ushape(rng) == 0 ? Shape::SmoothBump : Shape::OddBump;
      piece.center = Uc(rng);
      piece.halfwidth = Uw(rng);
      piece.amplitude = Ua(rng) * (Usign(rng) == 0 ? 1.0 : -1.0);
      pieces.push_back(piece);
    }
    TauResult t = tau(pn, PerturbationProfile(pieces), 32);
    max_neumann = std::max(max_neumann, t.value);
  }
  ok = ok && max_neumann < 0.0;
  mm << "max neumann tau over 20 profiles = " << sci(max_neumann)
     << " (require < 0)";
  m = mm.str();
  return ok;
}

// --------------------------------------------------------------------------
// 6. Mean-driven weak-coupling law: the eps^2 coefficient matches
//    alpha0^2 <beta>^2 within 15% at the finest eps, and the eps^3-normalized
//    residual stays bounded across the sweep.
// --------------------------------------------------------------------------
bool crit_mean_law(const ValidateOptions&, std::string& m) {
  ExperimentConfig cfg;
  cfg.mode = RunMode::Sweep;
  cfg.params = {kPi, -0.5};
  cfg.beta = make_bump(0.0, 1.0, 2.0 / kBumpMean);
  cfg.epsilons = {0.2, 0.1, 0.05};
  cfg.grid.N2 = 31;
  cfg.grid.h1 = 0.1;

  SweepResult s = run_sweep(cfg);
  bool conv = true;
  for (const SweepRow& r : s.rows) conv = conv && r.converged;

  const double coeff = s.rows.back().coeff_fit;
  const bool coeff_ok = std::abs(coeff / s.fit_target - 1.0) <= 0.15;

  std::vector<double> r3;
  for (const SweepRow& r : s.rows) {
    const double pred3 = s.prediction.lambda_upto(r.epsilon, 3);
    r3.push_back(std::abs(r.lambda_fd - cplx(pred3, 0.0)) /
                 std::pow(r.epsilon, 3));
  }
  const double bound = 3.0 * std::max(r3.front(), 1e-6);
  bool r_ok = true;
  for (double v : r3) r_ok = r_ok && v <= bound;

  m = "eps^2 coeff at eps=0.05: " + sci(coeff) + " vs " +
      sci(s.fit_target) + " (require within 15%); eps^3 residuals [" +
      sci(r3[0]) + ", " + sci(r3[1]) + ", " + sci(r3[2]) + "] (require <= " +
      sci(bound) + ")";
  return conv && coeff_ok && r_ok;
}

// --------------------------------------------------------------------------
// 7. Absence certification: configurations with no predicted bound state
//    yield zero discrete eigenvalues under a shift scan below threshold.
// --------------------------------------------------------------------------
bool crit_absence(const ValidateOptions&, std::string& m) {
  StripGrid g{30.0, 599, 63};
  struct AbsenceCase {
    const char* label;
    double alpha0;
    double amp;
    double eps;
  };
  const AbsenceCase cases[] = {
      {"repulsive-mean", -0.5, -2.0 / kBumpMean, 0.3},
      {"neumann", 0.0, 2.0 / kBumpMean, 0.3},
      {"unperturbed", -0.5, 0.0, 0.0},
  };
  std::ostringstream mm;
  int total_discrete = 0;
  for (const AbsenceCase& c : cases) {
    WaveguideParams p{kPi, c.alpha0};
    PerturbationProfile beta;
    if (c.amp != 0.0) beta = make_bump(0.0, 1.0, c.amp);
    BandedComplexMatrix A = assemble_perturbed(p, c.eps, beta, g);
    const double mu0sq = p.mu0() * p.mu0();
    ScanReport rep =
        shift_scan(A, mu0sq, g, {mu0sq - 0.1, -0.02}, {mu0sq, 0.02}, 5, 5);
    total_discrete += rep.discrete_count;
    mm << c.label << ": " << rep.discrete_count << " discrete of "
       << rep.found.size() << " found (" << rep.shifts_converged << "/"
       << rep.shifts_tried << " shifts converged); ";
  }
  mm << "(require 0 discrete everywhere)";
  m = mm.str();
  return total_discrete == 0;
}

// --------------------------------------------------------------------------
// 8. Zero-mean law: the constructed sign-balanced profile passes the
//    positivity check, and the eps^4 coefficient tracks tau^2 within 50%.
// --------------------------------------------------------------------------
bool crit_zero_mean_law(const ValidateOptions&, std::string& m) {
  WaveguideParams p{kPi, -0.5};
  const double l = 2.0;
  const double amp = 0.1222;
  PerturbationProfile tilde({Piece{Shape::SmoothBump, 1.5, 1.0, amp},
                             Piece{Shape::SmoothBump, -1.5, 1.0, -amp}});
  ZeroMeanPositivity chk = check_th2_3(p, tilde, l);

  ExperimentConfig cfg;
  cfg.mode = RunMode::Sweep;
  cfg.params = p;
  cfg.beta = profile_scale(tilde, l);
  cfg.epsilons = {0.4, 0.3};
  cfg.grid.N2 = 31;
  cfg.grid.h1 = 0.14;

  SweepResult s = run_sweep(cfg);
  const double k2 = s.prediction.k_coeffs[1];
  const double mu0sq = s.prediction.lambda_coeffs[0];

  std::ostringstream mm;
  mm << "sufficient check " << (chk.holds ? "holds" : "FAILS") << " ("
     << sci(chk.left) << " > " << sci(chk.right) << "); tau=" << sci(k2)
     << "; ";
  bool rows_ok = true;
  for (const SweepRow& r : s.rows) {
    const StripGrid grid =
        resolve_grid(cfg.grid, cfg.beta, s.prediction.decay_rate(r.epsilon));
    const double gap = gap_threshold(grid);
    const double depth = mu0sq - r.lambda_fd.real();
    const double ratio = r.coeff_fit / (k2 * k2);
    const bool row_ok = r.converged && std::abs(r.lambda_fd.imag()) < 1e-6 &&
                        depth > gap && ratio >= 0.5 && ratio <= 1.5;
    rows_ok = rows_ok && row_ok;
    mm << "eps=" << r.epsilon << ": ratio=" << sci(ratio)
       << " (require [0.5, 1.5]), depth=" << sci(depth) << " > gap="
       << sci(gap) << ", |Im|=" << sci(std::abs(r.lambda_fd.imag()))
       << (row_ok ? "" : " FAIL") << "; ";
  }
  m = mm.str();
  return chk.holds && rows_ok;
}

// --------------------------------------------------------------------------
// 9. Supercritical existence: constructed profile passes the dominance
//    check, tau > 0, and a discrete real eigenvalue of the right magnitude
//    sits below the threshold.
// --------------------------------------------------------------------------
bool crit_supercritical(const ValidateOptions&, std::string& m) {
  WaveguideParams p{kPi, 2.02};
  PerturbationProfile beta = construct_beta_for_th2_4(p, 0.27);
  SupercriticalPositivity chk = check_th2_4(p, beta);

  ExperimentConfig cfg;
  cfg.mode = RunMode::Sweep;
  cfg.params = p;
  cfg.beta = beta;
  cfg.epsilons = {0.3};
  cfg.grid.N2 = 31;
  cfg.grid.h1 = 0.1;

  SweepResult s = run_sweep(cfg);
  const double k2 = s.prediction.k_coeffs[1];
  const double mu0sq = s.prediction.lambda_coeffs[0];
  const SweepRow& r = s.rows.front();

  const StripGrid grid =
      resolve_grid(cfg.grid, cfg.beta, s.prediction.decay_rate(r.epsilon));
  const double gap = gap_threshold(grid);
  const double depth = mu0sq - r.lambda_fd.real();
  const double ratio = r.coeff_fit / (k2 * k2);

  std::ostringstream mm;
  mm << "dominance check " << (chk.holds ? "holds" : "FAILS") << " ("
     << sci(chk.lhs) << " > " << sci(chk.rhs) << ", m=" << chk.m
     << "); tau=" << sci(k2) << " (require > 0); eps=0.3: depth=" << sci(depth)
     << " > gap=" << sci(gap) << ", ratio=" << sci(ratio)
     << " (require [0.5, 1.5]), |Im|=" << sci(std::abs(r.lambda_fd.imag()));
  m = mm.str();
  return chk.holds && k2 > 0.0 && r.converged && depth > gap &&
         std::abs(r.lambda_fd.imag()) < 1e-6 && ratio >= 0.5 && ratio <= 1.5;
}

// --------------------------------------------------------------------------
// 10. Symmetry suite: conjugation pairing under alpha -> -alpha, numerical-
//     range sector containment, and realness + center symmetry for odd
//     antisymmetric boundary profiles.
// --------------------------------------------------------------------------
bool crit_symmetry(const ValidateOptions&, std::string& m) {
  StripGrid g{15.0, 299, 31};
  const double eps = 0.3;
  WaveguideParams pm{kPi, -0.5};
  WaveguideParams pp{kPi, 0.5};
  PerturbationProfile bplus = make_bump(0.0, 1.0, 2.0 / kBumpMean);
  PerturbationProfile bminus = make_bump(0.0, 1.0, -2.0 / kBumpMean);

  // alpha -> -alpha maps the matrix to its entrywise conjugate...
  BandedComplexMatrix Am = assemble_perturbed(pm, eps, bplus, g);
  BandedComplexMatrix Ap = assemble_perturbed(pp, eps, bminus, g);
  double mat_defect = 0.0;
  for (size_t k = 0; k < Am.ab.size(); ++k)
    mat_defect = std::max(mat_defect,
                          std::abs(Ap.ab[k] - std::conj(Am.ab[k])));

  // ...and therefore pairs every eigenvalue with its conjugate.
  Prediction pred = predict(pm, bplus, eps);
  const cplx sigma{pred.lambda_of(eps), 0.0};
  EigenPair e1 = find_eigenpair(Am, sigma);
  EigenPair e2 = find_eigenpair(Ap, sigma);
  const double pair_defect = std::abs(e2.lambda - std::conj(e1.lambda));

  // Sector containment: |Im| <= 2 max|alpha| sqrt(Re) for everything a scan
  // converges to.
  const double mu0sq = pm.mu0() * pm.mu0();
  ScanReport rep = shift_scan(Am, mu0sq, g, {mu0sq - 0.1, -0.05},
                              {mu0sq + 0.25, 0.05}, 4, 3);
  double alpha_max = 0.0;
  for (int i = 1; i <= g.N1; ++i)
    alpha_max = std::max(alpha_max,
                         std::abs(pm.alpha0 + eps * bplus(g.x1(i))));
  double sector_excess = -1e300;
  for (const ScanItem& it : rep.found) {
    const double im = std::abs(it.lambda.imag());
    const double cap =
        2.0 * alpha_max * std::sqrt(std::max(it.lambda.real(), 0.0));
    sector_excess = std::max(sector_excess, im - cap);
  }
  const bool sector_ok = !rep.found.empty() && sector_excess <= 1e-6;

  // Antisymmetric boundary profile: the targeted eigenvalue is real and the
  // eigenfunction modulus is symmetric under the strip's center flip.
  WaveguideParams p0{kPi, 0.0};
  BandedComplexMatrix A0 =
      assemble_perturbed(p0, eps, make_odd_bump(0.0, 1.0, 1.0), g);
  EigenPair e0 = find_eigenpair(A0, cplx(0.005, 0.0));
  const double im0 = std::abs(e0.lambda.imag());
  const double sym = symmetry_defect(e0, g);

  std::ostringstream mm;
  mm << "matrix conjugation defect=" << sci(mat_defect)
     << ", eigenvalue pairing defect=" << sci(pair_defect)
     << " (require < 1e-8); sector excess=" << sci(sector_excess) << " over "
     << rep.found.size() << " found (require <= 1e-6); odd-profile |Im|="
     << sci(im0) << ", center-flip defect=" << sci(sym)
     << " (require < 1e-6)";
  m = mm.str();
  return mat_defect <= 1e-14 && pair_defect < 1e-8 && sector_ok &&
         im0 < 1e-6 && sym < 1e-6;
}

struct CriterionSpec {
  const char* name;
  long long budget_ms;  // 0: no hard budget (multi-minute solves)
  bool (*fn)(const ValidateOptions&, std::string&);
};

const CriterionSpec kCriteria[kCriterionCount] = {
    {"transverse mode biorthonormality", 1000, crit_biortho},
    {"boundary-closure residual order", 1000, crit_residual_order},
    {"resolvent reconstruction", 10000, crit_resolvent},
    {"bracket quadrature vs ODE oracle", 10000, crit_brackets},
    {"coupling-series truncation and sign", 30000, crit_tau},
    {"mean-driven eigenvalue law (th2.1-i)", 0, crit_mean_law},
    {"absence certification (th2.1-ii / th2.0)", 0, crit_absence},
    {"zero-mean eigenvalue law (th2.1-iii)", 0, crit_zero_mean_law},
    {"supercritical existence (th2.2-i)", 0, crit_supercritical},
    {"symmetry suite", 120000, crit_symmetry},
};

}  // namespace

CriterionResult run_criterion(int id, const ValidateOptions& opts) {
  if (id < 1 || id > kCriterionCount)
    throw DomainError("criterion id must be in 1..10");
  const CriterionSpec& spec = kCriteria[id - 1];
  CriterionResult out;
  out.id = id;
  out.name = spec.name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    out.pass = spec.fn(opts, out.measured);
  } catch (const std::exception& e) {
    out.pass = false;
    out.measured = std::string("exception: ") + e.what();
  }
  out.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  if (spec.budget_ms > 0 && out.runtime_ms >= spec.budget_ms) {
    out.pass = false;
    out.measured += " [runtime " + std::to_string(out.runtime_ms) +
                    " ms over budget " + std::to_string(spec.budget_ms) +
                    " ms]";
  }
  return out;
}

ValidateReport run_validate(const ValidateOptions& opts) {
  ValidateReport report;
  report.all_pass = true;
  for (int id = 1; id <= kCriterionCount; ++id) {
    report.results.push_back(run_criterion(id, opts));
    report.all_pass = report.all_pass && report.results.back().pass;
  }
  return report;
}

std::string ValidateReport::table() const {
  std::ostringstream os;
  os << " # | result | time     | criterion\n";
  os << "---+--------+----------+----------------------------------------\n";
  for (const CriterionResult& r : results) {
    char line[128];
    std::snprintf(line, sizeof line, "%2d | %-6s | %7.1fs | %s\n", r.id,
                  r.pass ? "PASS" : "FAIL", r.runtime_ms / 1000.0,
                  r.name.c_str());
    os << line;
    os << "   |        |          |   " << r.measured << "\n";
  }
  os << (all_pass ? "result: all criteria passed"
                  : "result: FAILURES present")
     << "\n";
  return os.str();
}

}  // namespace ptwg
