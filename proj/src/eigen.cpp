#include "ptwg/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ptwg/errors.hpp"
#include "ptwg/parallel.hpp"
#include "ptwg/transverse.hpp"

namespace ptwg {

namespace {

double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

void scale(std::vector<cplx>& v, double f) {
  for (cplx& z : v) z *= f;
}

cplx rayleigh(const BandedComplexMatrix& A, const std::vector<cplx>& v,
              std::vector<cplx>& Av) {
  Av = A.apply(v);
  cplx num(0.0, 0.0);
  double den = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    num += std::conj(v[i]) * Av[i];
    den += std::norm(v[i]);
  }
  return num / den;
}

double residual_norm(const std::vector<cplx>& Av, const std::vector<cplx>& v,
                     cplx lam) {
  double s = 0.0;
  for (size_t i = 0; i < v.size(); ++i) s += std::norm(Av[i] - lam * v[i]);
  return std::sqrt(s);
}

// Deterministic start vector with no special symmetry.
std::vector<cplx> seed_vector(int n) {
  std::vector<cplx> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = cplx(std::sin(0.7 * (i + 1)) + 0.31 * std::cos(1.3 * i),
                0.17 * std::sin(0.41 * i + 0.9));
  double nv = norm2(v);
  scale(v, 1.0 / nv);
  return v;
}

BandedLU factor_with_retry(const BandedComplexMatrix& A, cplx& sigma) {
  for (int attempt = 0;; ++attempt) {
    try {
      return band_lu_factor(A, sigma);
    } catch (const SingularShift&) {
      if (attempt >= 3) throw;
      sigma += 1e-8 * (std::abs(sigma) > 0.0 ? std::abs(sigma) : 1.0);
    }
  }
}

}  // namespace

EigenPair find_eigenpair(const BandedComplexMatrix& A, cplx sigma, double tol,
                         int maxit) {
  const int n = A.n;
  cplx sig = sigma;
  BandedLU lu = factor_with_retry(A, sig);

  std::vector<cplx> v = seed_vector(n), Av;
  cplx lam = sig;
  double best_res = std::numeric_limits<double>::infinity();
  cplx best_lam = lam;
  std::vector<cplx> best_v = v;
  bool refining = false;
  bool may_refactor = true;

  for (int it = 1; it <= maxit; ++it) {
    std::vector<cplx> w = v;
    band_lu_solve(lu, w);
    double nw = norm2(w);
    if (!(nw > 0.0) || !std::isfinite(nw))
      throw SingularShift("inverse iteration produced a non-finite iterate");
    scale(w, 1.0 / nw);
    cplx lam_new = rayleigh(A, w, Av);
    double res = residual_norm(Av, w, lam_new);
    if (res < best_res) {
      best_res = res;
      best_lam = lam_new;
      best_v = w;
    }
    if (res < tol) return {lam_new, w, res, it};
    bool stable = std::abs(lam_new - lam) < 1e-4 * std::max(1.0, std::abs(lam_new));
    lam = lam_new;
    v = std::move(w);
    if (stable && !refining) refining = true;
    if (refining && may_refactor &&
        std::abs(lam - sig) > 1e-14 * std::max(1.0, std::abs(lam))) {
      cplx next = lam;
      try {
        lu = factor_with_retry(A, next);
        sig = next;
      } catch (const SingularShift&) {
        // Shift landed exactly on a discrete eigenvalue; keep the previous
        // factorization and let plain inverse iteration finish.
        may_refactor = false;
      }
    }
  }
  throw MaxIterations("eigenpair iteration did not reach tolerance " +
                          std::to_string(tol),
                      best_lam, best_v, best_res);
}

double gap_threshold(const StripGrid& g) {
  double q = M_PI / (2.0 * g.L);
  return 2.0 * q * q;
}

namespace {

ScanReport scan_impl(const BandedComplexMatrix& A, double mu0sq,
                     const StripGrid& grid, cplx lo, cplx hi, int nre, int nim,
                     double tol, int maxit, bool parallel) {
  struct Hit {
    bool ok = false;
    cplx lambda;
    double residual = 0.0;
  };
  if (nre < 1 || nim < 1) throw DomainError("shift grid must be nonempty");
  std::vector<cplx> shifts;
  shifts.reserve(static_cast<size_t>(nre) * nim);
  for (int a = 0; a < nre; ++a)
    for (int b = 0; b < nim; ++b) {
      double re = nre == 1 ? lo.real()
                           : lo.real() + (hi.real() - lo.real()) * a / (nre - 1);
      double im = nim == 1 ? lo.imag()
                           : lo.imag() + (hi.imag() - lo.imag()) * b / (nim - 1);
      shifts.emplace_back(re, im);
    }

  auto work = [&](std::ptrdiff_t i) {
    Hit h;
    try {
      EigenPair ep = find_eigenpair(A, shifts[static_cast<size_t>(i)], tol, maxit);
      h.ok = true;
      h.lambda = ep.lambda;
      h.residual = ep.residual;
    } catch (const MaxIterations&) {
    } catch (const SingularShift&) {
    }
    return h;
  };
  auto n = static_cast<std::ptrdiff_t>(shifts.size());
  auto hits = parallel ? parallel_map<Hit>(n, work) : serial_map<Hit>(n, work);

  ScanReport rep;
  rep.gap = gap_threshold(grid);
  rep.shifts_tried = static_cast<int>(shifts.size());
  for (const Hit& h : hits) {
    if (!h.ok) continue;
    ++rep.shifts_converged;
    bool dup = false;
    for (const ScanItem& s : rep.found)
      if (std::abs(s.lambda - h.lambda) < 1e-8) {
        dup = true;
        break;
      }
    if (dup) continue;
    bool disc = mu0sq - h.lambda.real() > rep.gap;
    rep.found.push_back({h.lambda, h.residual, disc});
    if (disc) ++rep.discrete_count;
  }
  return rep;
}

}  // namespace

ScanReport shift_scan(const BandedComplexMatrix& A, double mu0sq,
                      const StripGrid& grid, cplx lo, cplx hi, int nre,
                      int nim, double tol, int maxit) {
  return scan_impl(A, mu0sq, grid, lo, hi, nre, nim, tol, maxit, true);
}

ScanReport shift_scan_serial(const BandedComplexMatrix& A, double mu0sq,
                             const StripGrid& grid, cplx lo, cplx hi, int nre,
                             int nim, double tol, int maxit) {
  return scan_impl(A, mu0sq, grid, lo, hi, nre, nim, tol, maxit, false);
}

std::vector<double> mode0_projection(const EigenPair& pair,
                                     const StripGrid& grid,
                                     const WaveguideParams& p) {
  const int m = grid.rows();
  if (pair.psi.size() != static_cast<size_t>(grid.N1) * m)
    throw DomainError("eigenvector size does not match grid");
  const double h2 = grid.h2(p.d);
  std::vector<cplx> w(m);
  for (int j = 0; j < m; ++j) {
    double wt = (j == 0 || j == m - 1) ? 0.5 * h2 : h2;
    // conj(phi_0) = A_0 psi_0
    w[j] = wt * A_j(p, 0) * psi_eval(p, 0, grid.x2(j, p.d));
  }
  std::vector<double> amp(grid.N1);
  for (int i = 0; i < grid.N1; ++i) {
    cplx s(0.0, 0.0);
    for (int j = 0; j < m; ++j) s += pair.psi[static_cast<size_t>(i) * m + j] * w[j];
    amp[i] = std::abs(s);
  }
  return amp;
}

namespace {

struct LogFit {
  double k;
  double sse;
};

// Least squares of ln(amp) ~ ln(c) - k x.
LogFit fit_plain(const std::vector<double>& x, const std::vector<double>& la) {
  size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += la[i];
    sxx += x[i] * x[i];
    sxy += x[i] * la[i];
  }
  double det = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / det;
  double icpt = (sy - slope * sx) / n;
  double sse = 0;
  for (size_t i = 0; i < n; ++i) {
    double r = la[i] - (icpt + slope * x[i]);
    sse += r * r;
  }
  return {-slope, sse};
}

// Gauss-Newton on ln(amp) ~ ln(c) - k x + ln(1 - exp(-2k(L-x))).
LogFit fit_wall(const std::vector<double>& x, const std::vector<double>& la,
                double L, double k0) {
  double k = std::max(k0, 1e-8), lc = 0.0;
  // Initialize intercept given k.
  auto model = [&](double xi, double kk) {
    double e = std::exp(-2.0 * kk * (L - xi));
    return -kk * xi + std::log1p(-std::min(e, 1.0 - 1e-300));
  };
  size_t n = x.size();
  {
    double s = 0;
    for (size_t i = 0; i < n; ++i) s += la[i] - model(x[i], k);
    lc = s / n;
  }
  for (int it = 0; it < 60; ++it) {
    // Jacobian wrt (lc, k).
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (size_t i = 0; i < n; ++i) {
      double e = std::exp(-2.0 * k * (L - x[i]));
      double dk = -x[i] + 2.0 * (L - x[i]) * e / std::max(1.0 - e, 1e-300);
      double r = la[i] - (lc + model(x[i], k));
      a11 += 1.0;
      a12 += dk;
      a22 += dk * dk;
      b1 += r;
      b2 += r * dk;
    }
    double det = a11 * a22 - a12 * a12;
    if (std::abs(det) < 1e-300) break;
    double dlc = (a22 * b1 - a12 * b2) / det;
    double dk = (a11 * b2 - a12 * b1) / det;
    lc += dlc;
    k = std::max(k + dk, 1e-12);
    if (std::abs(dlc) + std::abs(dk) < 1e-13) break;
  }
  double sse = 0;
  for (size_t i = 0; i < n; ++i) {
    double r = la[i] - (lc + model(x[i], k));
    sse += r * r;
  }
  return {k, sse};
}

}  // namespace

double decay_rate(const EigenPair& pair, const StripGrid& grid,
                  const WaveguideParams& p) {
  auto amp = mode0_projection(pair, grid, p);
  const double h1 = grid.h1();
  std::vector<double> xs, la;
  double peak = 0.0;
  for (int i = 0; i < grid.N1; ++i) {
    double x = grid.x1(i + 1);
    if (x <= grid.L / 3.0 || x >= grid.L - 5.0 * h1) continue;
    peak = std::max(peak, amp[i]);
    if (amp[i] < 1e-280) continue;
    xs.push_back(x);
    la.push_back(std::log(amp[i]));
  }
  if (peak < 1e-250)
    throw FitError("mode amplitude underflows in the fit window");
  if (xs.size() < 8)
    throw FitError("too few usable points in the decay-fit window");
  LogFit plain = fit_plain(xs, la);
  LogFit wall = fit_wall(xs, la, grid.L, plain.k);
  return wall.sse < plain.sse ? wall.k : plain.k;
}

double symmetry_defect(const EigenPair& pair, const StripGrid& grid) {
  const int m = grid.rows();
  if (pair.psi.size() != static_cast<size_t>(grid.N1) * m)
    throw DomainError("eigenvector size does not match grid");
  double worst = 0.0;
  for (int r = 0; r < grid.N1; ++r)
    for (int j = 0; j < m; ++j) {
      double a = std::abs(pair.psi[static_cast<size_t>(r) * m + j]);
      double b = std::abs(
          pair.psi[static_cast<size_t>(grid.N1 - 1 - r) * m + (m - 1 - j)]);
      worst = std::max(worst, std::abs(a - b));
    }
  return worst;
}

}  // namespace ptwg
