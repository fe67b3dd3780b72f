#include "ptwg/resolvent.hpp"

#include <cmath>

#include "ptwg/errors.hpp"
#include "ptwg/parallel.hpp"

namespace ptwg {

namespace {

struct ModeData {
  double mu;
  cplx A;
  cplx kappa;  // sqrt(mu^2 - z), Re > 0
};

ResolventField apply_impl(const WaveguideParams& p, cplx z,
                          const std::function<cplx(double, double)>& F,
                          const SupportBox& box, int J,
                          const std::vector<double>& x1_out,
                          const std::vector<double>& x2_out,
                          const QuadratureSpec& quad, bool parallel) {
  require_valid(p);
  double mu0 = p.mu0();
  if (z.imag() == 0.0 && z.real() >= mu0 * mu0 - 1e-12)
    throw SpectrumError("spectral parameter lies on the essential spectrum");
  if (!(box.x1_hi > box.x1_lo))
    throw DomainError("empty source support box");
  if (J < 0) throw DomainError("mode cutoff must be nonnegative");

  std::vector<ModeData> md(J + 1);
  for (int j = 0; j <= J; ++j) {
    double mu = mu_j(p, j);
    cplx kap = std::sqrt(cplx(mu * mu, 0.0) - z);
    if (kap.real() <= 0.0)
      throw SpectrumError("spectral parameter not separated from mode branch");
    md[j] = {mu, A_j(p, j), kap};
  }

  // Transverse quadrature (smooth integrand, single panel on [0, d]).
  const int ny = quad.nodes_per_panel;
  const auto& yr = gauss_legendre(ny);
  std::vector<double> ynode(ny), yw(ny);
  std::vector<cplx> psiy(static_cast<size_t>(J + 1) * ny);
  for (int k = 0; k < ny; ++k) {
    ynode[k] = 0.5 * p.d * (1.0 + yr.nodes[k]);
    yw[k] = 0.5 * p.d * yr.weights[k];
    for (int j = 0; j <= J; ++j)
      psiy[static_cast<size_t>(j) * ny + k] = psi_eval(p, j, ynode[k]);
  }

  // Base panels over the source support (width <= 2 each).
  int npanel = std::max(1, static_cast<int>(std::ceil((box.x1_hi - box.x1_lo) / 2.0)));
  std::vector<double> base(npanel + 1);
  for (int i = 0; i <= npanel; ++i)
    base[i] = box.x1_lo + (box.x1_hi - box.x1_lo) * i / npanel;

  const int nt = quad.nodes_per_panel;
  const auto& tr = gauss_legendre(nt);

  // Mode projections g_j(t) = A_j * integral F(t, y) psi_j(y) dy at the base
  // panel nodes, cached once; f_l2norm accumulated alongside.
  std::vector<double> tnode(static_cast<size_t>(npanel) * nt),
      tw(static_cast<size_t>(npanel) * nt);
  std::vector<cplx> gcache(static_cast<size_t>(J + 1) * npanel * nt);
  double f_l2 = 0.0;
  for (int pl = 0; pl < npanel; ++pl) {
    double a = base[pl], b = base[pl + 1];
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int q = 0; q < nt; ++q) {
      size_t idx = static_cast<size_t>(pl) * nt + q;
      double t = mid + half * tr.nodes[q];
      double wt = half * tr.weights[q];
      tnode[idx] = t;
      tw[idx] = wt;
      double col_l2 = 0.0;
      std::vector<cplx> fy(ny);
      for (int k = 0; k < ny; ++k) {
        fy[k] = F(t, ynode[k]);
        col_l2 += yw[k] * std::norm(fy[k]);
      }
      f_l2 += wt * col_l2;
      for (int j = 0; j <= J; ++j) {
        cplx s(0.0, 0.0);
        for (int k = 0; k < ny; ++k)
          s += yw[k] * fy[k] * psiy[static_cast<size_t>(j) * ny + k];
        gcache[static_cast<size_t>(j) * npanel * nt + idx] = md[j].A * s;
      }
    }
  }
  f_l2 = std::sqrt(std::max(0.0, f_l2));

  // Longitudinal profile u_j(x) = integral exp(-kappa|x-t|)/(2 kappa) g_j(t)dt.
  // Panels away from x use the cache; the panel containing x is re-integrated
  // split at the kink.
  auto column = [&](std::ptrdiff_t i1) {
    double x = x1_out[static_cast<size_t>(i1)];
    int hot = -1;
    if (x > base.front() && x < base.back()) {
      hot = static_cast<int>((x - box.x1_lo) / (box.x1_hi - box.x1_lo) * npanel);
      hot = std::min(npanel - 1, std::max(0, hot));
    }
    std::vector<cplx> u(J + 1, cplx(0.0, 0.0));
    for (int pl = 0; pl < npanel; ++pl) {
      if (pl == hot) continue;
      for (int q = 0; q < nt; ++q) {
        size_t idx = static_cast<size_t>(pl) * nt + q;
        double dist = std::abs(x - tnode[idx]);
        for (int j = 0; j <= J; ++j) {
          cplx ker = std::exp(-md[j].kappa * dist) / (2.0 * md[j].kappa);
          u[j] += tw[idx] * ker * gcache[static_cast<size_t>(j) * npanel * nt + idx];
        }
      }
    }
    if (hot >= 0) {
      // Two sub-panels meeting at x.
      for (int side = 0; side < 2; ++side) {
        double a = side == 0 ? base[hot] : x;
        double b = side == 0 ? x : base[hot + 1];
        if (!(b > a)) continue;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int q = 0; q < nt; ++q) {
          double t = mid + half * tr.nodes[q];
          double wt = half * tr.weights[q];
          std::vector<cplx> fy(ny);
          for (int k = 0; k < ny; ++k) fy[k] = F(t, ynode[k]);
          double dist = std::abs(x - t);
          for (int j = 0; j <= J; ++j) {
            cplx s(0.0, 0.0);
            for (int k = 0; k < ny; ++k)
              s += yw[k] * fy[k] * psiy[static_cast<size_t>(j) * ny + k];
            cplx ker = std::exp(-md[j].kappa * dist) / (2.0 * md[j].kappa);
            u[j] += wt * ker * md[j].A * s;
          }
        }
      }
    }
    return u;
  };

  auto n1 = static_cast<std::ptrdiff_t>(x1_out.size());
  auto cols = parallel ? parallel_map<std::vector<cplx>>(n1, column)
                       : serial_map<std::vector<cplx>>(n1, column);

  ResolventField out;
  out.x1 = x1_out;
  out.x2 = x2_out;
  out.J = J;
  out.f_l2norm = f_l2;
  out.values.assign(x1_out.size() * x2_out.size(), cplx(0.0, 0.0));
  std::vector<cplx> psix2(static_cast<size_t>(J + 1) * x2_out.size());
  for (size_t k = 0; k < x2_out.size(); ++k)
    for (int j = 0; j <= J; ++j)
      psix2[static_cast<size_t>(j) * x2_out.size() + k] =
          psi_eval(p, j, x2_out[k]);
  for (size_t i = 0; i < x1_out.size(); ++i)
    for (size_t k = 0; k < x2_out.size(); ++k) {
      cplx s(0.0, 0.0);
      for (int j = 0; j <= J; ++j)
        s += cols[i][j] * psix2[static_cast<size_t>(j) * x2_out.size() + k];
      out.values[i * x2_out.size() + k] = s;
    }

  // Dropped-mode remainder: each mode-j component is bounded in L2 by
  // |A_j| ||psi_j||^2 ||F|| / (mu_j^2 - Re z); the factor approaches 1.
  double a2 = p.alpha0 * p.alpha0;
  double tail = 0.0;
  int M = J + 1000;
  double need = 2.0 * (a2 + std::abs(z));
  while (std::pow(M * M_PI / p.d, 2) < need) ++M;
  for (int j = J + 1; j <= M; ++j) {
    double mu = mu_j(p, j);
    double m2 = mu * mu;
    double cj = (m2 + a2) / std::abs(m2 - a2);
    tail += cj / (m2 - z.real());
  }
  tail += 3.0 * p.d * p.d / (M_PI * M_PI * M);
  out.tail_bound = tail * f_l2;
  return out;
}

}  // namespace

ResolventField resolvent_apply(const WaveguideParams& p, cplx z,
                               const std::function<cplx(double, double)>& F,
                               const SupportBox& box, int J,
                               const std::vector<double>& x1_out,
                               const std::vector<double>& x2_out,
                               const QuadratureSpec& quad) {
  return apply_impl(p, z, F, box, J, x1_out, x2_out, quad, true);
}

ResolventField resolvent_apply_serial(
    const WaveguideParams& p, cplx z,
    const std::function<cplx(double, double)>& F, const SupportBox& box, int J,
    const std::vector<double>& x1_out, const std::vector<double>& x2_out,
    const QuadratureSpec& quad) {
  return apply_impl(p, z, F, box, J, x1_out, x2_out, quad, false);
}

double field_l2norm(const ResolventField& f) {
  if (f.x1.size() < 2 || f.x2.size() < 2) return 0.0;
  double s = 0.0;
  for (size_t i = 0; i < f.x1.size(); ++i) {
    double wi = 0.0;
    if (i > 0) wi += 0.5 * (f.x1[i] - f.x1[i - 1]);
    if (i + 1 < f.x1.size()) wi += 0.5 * (f.x1[i + 1] - f.x1[i]);
    for (size_t k = 0; k < f.x2.size(); ++k) {
      double wk = 0.0;
      if (k > 0) wk += 0.5 * (f.x2[k] - f.x2[k - 1]);
      if (k + 1 < f.x2.size()) wk += 0.5 * (f.x2[k + 1] - f.x2[k]);
      s += wi * wk * std::norm(f.values[i * f.x2.size() + k]);
    }
  }
  return std::sqrt(s);
}

}  // namespace ptwg
