#include "ptwg/transverse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptwg/errors.hpp"
#include "ptwg/parallel.hpp"

namespace ptwg {

double mu_j(const WaveguideParams& p, int j) {
  if (j < 0) throw DomainError("mode index must be nonnegative");
  Regime r = p.regime();
  if (r == Regime::Forbidden)
    throw RegimeError("transverse system incomplete: alpha0*d/pi is a nonzero integer");
  double pi_d = M_PI / p.d;
  switch (r) {
    case Regime::Neumann:
      return j * pi_d;
    case Regime::Subcritical:
      return j == 0 ? std::abs(p.alpha0) : j * pi_d;
    default:  // Supercritical: index 1 carries the boundary mode
      if (j == 0) return pi_d;
      if (j == 1) return std::abs(p.alpha0);
      return j * pi_d;
  }
}

namespace {

// True when mode j oscillates at the boundary frequency |alpha0|.
bool is_alpha_mode(const WaveguideParams& p, int j) {
  Regime r = p.regime();
  return (r == Regime::Subcritical && j == 0) ||
         (r == Regime::Supercritical && j == 1);
}

}  // namespace

cplx A_j(const WaveguideParams& p, int j) {
  double mu = mu_j(p, j);
  if (is_alpha_mode(p, j)) {
    cplx i(0.0, 1.0);
    return 2.0 * i * p.alpha0 / (1.0 - std::exp(-2.0 * i * p.alpha0 * p.d));
  }
  if (j == 0 && p.regime() == Regime::Neumann) return cplx(1.0 / p.d, 0.0);
  double m2 = mu * mu, a2 = p.alpha0 * p.alpha0;
  return cplx(2.0 * m2 / ((m2 - a2) * p.d), 0.0);
}

cplx psi_eval(const WaveguideParams& p, int j, double x2) {
  // Tolerate endpoint roundoff from grid arithmetic (e.g. (N+1) * (d/(N+1))
  // landing one ulp past d) while still rejecting genuinely bad coordinates.
  const double slack = 1e-12 * p.d;
  if (x2 < -slack || x2 > p.d + slack)
    throw DomainError("transverse coordinate outside [0, d]");
  x2 = std::min(std::max(x2, 0.0), p.d);
  double mu = mu_j(p, j);
  if (mu == 0.0) return cplx(1.0, 0.0);
  return cplx(std::cos(mu * x2), 0.0) -
         cplx(0.0, p.alpha0 / mu) * std::sin(mu * x2);
}

cplx phi_eval(const WaveguideParams& p, int j, double x2) {
  return std::conj(A_j(p, j) * psi_eval(p, j, x2));
}

ModeBasis make_basis(const WaveguideParams& p, int J) {
  if (J < 0) throw DomainError("basis size must be nonnegative");
  require_valid(p);
  ModeBasis b{p, J, {}};
  b.modes.reserve(J + 1);
  for (int j = 0; j <= J; ++j) b.modes.push_back({j, mu_j(p, j), A_j(p, j)});
  return b;
}

namespace {

std::vector<cplx> gram_impl(const ModeBasis& basis, int quad_nodes,
                            bool parallel) {
  const int n = basis.J + 1;
  const auto& rule = gauss_legendre(quad_nodes);
  const WaveguideParams& p = basis.params;
  // psi_j at the Gauss nodes of [0, d].
  std::vector<cplx> psis(static_cast<size_t>(n) * quad_nodes);
  std::vector<double> w(quad_nodes);
  for (int k = 0; k < quad_nodes; ++k) {
    double x2 = 0.5 * p.d * (1.0 + rule.nodes[k]);
    w[k] = 0.5 * p.d * rule.weights[k];
    for (int j = 0; j < n; ++j)
      psis[static_cast<size_t>(j) * quad_nodes + k] = psi_eval(p, j, x2);
  }
  auto row = [&](std::ptrdiff_t j) {
    std::vector<cplx> out(n);
    for (int k = 0; k < n; ++k) {
      cplx s(0.0, 0.0);
      for (int q = 0; q < quad_nodes; ++q)
        s += w[q] * psis[static_cast<size_t>(j) * quad_nodes + q] *
             psis[static_cast<size_t>(k) * quad_nodes + q];
      out[k] = basis.modes[k].A * s;
    }
    return out;
  };
  auto rows = parallel ? parallel_map<std::vector<cplx>>(n, row)
                       : serial_map<std::vector<cplx>>(n, row);
  std::vector<cplx> g(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) g[static_cast<size_t>(j) * n + k] = rows[j][k];
  return g;
}

}  // namespace

std::vector<cplx> biortho_gram(const ModeBasis& basis, int quad_nodes) {
  return gram_impl(basis, quad_nodes, true);
}

std::vector<cplx> biortho_gram_serial(const ModeBasis& basis, int quad_nodes) {
  return gram_impl(basis, quad_nodes, false);
}

std::vector<cplx> expand_coeffs(const ModeBasis& basis,
                                const std::vector<cplx>& samples) {
  const size_t n = samples.size();
  if (n < 2) throw DomainError("need at least two samples on [0, d]");
  const WaveguideParams& p = basis.params;
  double h = p.d / static_cast<double>(n - 1);
  std::vector<cplx> c(basis.J + 1);
  for (int j = 0; j <= basis.J; ++j) {
    cplx s(0.0, 0.0);
    for (size_t k = 0; k < n; ++k) {
      double wt = (k == 0 || k == n - 1) ? 0.5 : 1.0;
      double x2 = h * static_cast<double>(k);
      // conj(phi_j) = A_j psi_j
      s += wt * samples[k] * basis.modes[j].A * psi_eval(p, j, x2);
    }
    c[j] = s * h;
  }
  return c;
}

cplx mode_sum(const ModeBasis& basis, const std::vector<cplx>& coeffs,
              double x2) {
  cplx s(0.0, 0.0);
  for (size_t j = 0; j < coeffs.size(); ++j)
    s += coeffs[j] * psi_eval(basis.params, static_cast<int>(j), x2);
  return s;
}

}  // namespace ptwg
