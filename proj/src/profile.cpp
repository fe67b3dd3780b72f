#include "ptwg/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptwg/errors.hpp"

namespace ptwg {

namespace {

// Smooth bump b(u) = exp(1 - 1/(1-u^2)) and derivatives up to order 4,
// via g(u) = 1 - 1/(1-u^2) and Faa di Bruno on exp(g).
void bump_derivs(double u, int order, double* out) {
  for (int k = 0; k <= order; ++k) out[k] = 0.0;
  double s = 1.0 - u * u;
  if (s <= 0.0) return;
  double b = std::exp(1.0 - 1.0 / s);
  out[0] = b;
  if (order == 0) return;
  double s2 = s * s;
  double g1 = -2.0 * u / s2;
  out[1] = g1 * b;
  if (order == 1) return;
  double s3 = s2 * s;
  double g2 = -2.0 * (1.0 + 3.0 * u * u) / s3;
  out[2] = (g2 + g1 * g1) * b;
  if (order == 2) return;
  double s4 = s3 * s;
  double g3 = -24.0 * u * (1.0 + u * u) / s4;
  out[3] = (g3 + 3.0 * g1 * g2 + g1 * g1 * g1) * b;
  if (order == 3) return;
  double s5 = s4 * s;
  double u2 = u * u;
  double g4 = -24.0 * (1.0 + 10.0 * u2 + 5.0 * u2 * u2) / s5;
  out[4] = (g4 + 4.0 * g1 * g3 + 3.0 * g2 * g2 + 6.0 * g1 * g1 * g2 +
            g1 * g1 * g1 * g1) *
           b;
}

double eval_piece(const Piece& p, double x, int order) {
  double u = (x - p.center) / p.halfwidth;
  if (std::abs(u) >= 1.0) return 0.0;
  double iw = 1.0 / p.halfwidth;
  double scale = p.amplitude * std::pow(iw, order);
  switch (p.shape) {
    case Shape::SmoothBump: {
      double d[5];
      bump_derivs(u, order, d);
      return scale * d[order];
    }
    case Shape::OddBump: {
      double d[5];
      bump_derivs(u, order, d);
      // (u*b)^(n) = u*b^(n) + n*b^(n-1)
      double v = u * d[order] + (order > 0 ? order * d[order - 1] : 0.0);
      return scale * v;
    }
    case Shape::Box:
      if (order > 0)
        throw NonSmoothProfile("box piece has no classical derivative");
      return p.amplitude;
    case Shape::BumpD2: {
      double d[5];
      bump_derivs(u, order + 2, d);
      return scale * d[order + 2];
    }
    case Shape::CustomSampled: {
      if (order > 2)
        throw DomainError("sampled piece supports derivatives up to order 2");
      // Natural cubic interpolation through the uniform samples.
      const auto& y = p.samples;
      int n = static_cast<int>(y.size());
      if (n < 4) throw DomainError("sampled piece needs at least 4 samples");
      double h = 2.0 * p.halfwidth / (n - 1);
      // Natural spline: knot second derivatives m[1..n-2] solve a
      // tridiagonal system with diagonal 4 and off-diagonals 1.
      std::vector<double> m(n, 0.0), diag(n, 4.0), rhs(n, 0.0);
      for (int i = 1; i + 1 < n; ++i)
        rhs[i] = 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h);
      for (int i = 2; i + 1 < n; ++i) {
        double f = 1.0 / diag[i - 1];
        diag[i] -= f;
        rhs[i] -= f * rhs[i - 1];
      }
      for (int i = n - 2; i >= 1; --i)
        m[i] = (rhs[i] - m[i + 1]) / diag[i];
      double t = x - (p.center - p.halfwidth);
      int i = std::min(n - 2, std::max(0, static_cast<int>(t / h)));
      double a = t - i * h, b = h - a;
      double v;
      if (order == 0) {
        v = (m[i] * b * b * b + m[i + 1] * a * a * a) / (6.0 * h) +
            (y[i] / h - m[i] * h / 6.0) * b + (y[i + 1] / h - m[i + 1] * h / 6.0) * a;
      } else if (order == 1) {
        v = (-m[i] * b * b + m[i + 1] * a * a) / (2.0 * h) -
            (y[i] / h - m[i] * h / 6.0) + (y[i + 1] / h - m[i + 1] * h / 6.0);
      } else {
        v = (m[i] * b + m[i + 1] * a) / h;
      }
      return p.amplitude * v;
    }
  }
  return 0.0;
}

}  // namespace

Shape shape_from_tag(const std::string& tag) {
  if (tag == "smooth-bump" || tag == "bump") return Shape::SmoothBump;
  if (tag == "odd-bump" || tag == "odd") return Shape::OddBump;
  if (tag == "box") return Shape::Box;
  if (tag == "bump-d2") return Shape::BumpD2;
  if (tag == "custom-sampled") return Shape::CustomSampled;
  throw ConfigError("unknown shape tag: " + tag);
}

const char* shape_tag(Shape s) {
  switch (s) {
    case Shape::SmoothBump:
      return "smooth-bump";
    case Shape::OddBump:
      return "odd-bump";
    case Shape::Box:
      return "box";
    case Shape::BumpD2:
      return "bump-d2";
    default:
      return "custom-sampled";
  }
}

PerturbationProfile::PerturbationProfile(std::vector<Piece> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty()) return;
  lo_ = std::numeric_limits<double>::infinity();
  hi_ = -lo_;
  for (const auto& p : pieces_) {
    if (!(p.halfwidth > 0.0))
      throw DomainError("piece half-width must be positive");
    lo_ = std::min(lo_, p.center - p.halfwidth);
    hi_ = std::max(hi_, p.center + p.halfwidth);
    if (p.shape == Shape::Box) smooth_ = false;
  }
}

double PerturbationProfile::eval(double x, int order) const {
  if (order < 0 || order > 2)
    throw DomainError("profile derivative order must be 0, 1 or 2");
  double s = 0.0;
  for (const auto& p : pieces_) s += eval_piece(p, x, order);
  return s;
}

std::vector<double> PerturbationProfile::breakpoints() const {
  if (pieces_.empty()) return {0.0, 0.0};
  std::vector<double> b;
  for (const auto& p : pieces_) {
    b.push_back(p.center - p.halfwidth);
    b.push_back(p.center);
    b.push_back(p.center + p.halfwidth);
  }
  return merge_breaks(std::move(b), {});
}

ProfileMoments profile_moments(const PerturbationProfile& beta,
                               const QuadratureSpec& quad) {
  ProfileMoments m{0.0, 0.0, 0.0};
  if (beta.empty()) return m;
  auto breaks = beta.breakpoints();
  m.mean = integrate_panels([&](double x) { return beta.eval(x); }, breaks, quad);
  m.l2norm_sq = integrate_panels(
      [&](double x) {
        double v = beta.eval(x);
        return v * v;
      },
      breaks, quad);
  m.mean_sq = m.l2norm_sq;
  return m;
}

PerturbationProfile profile_scale(const PerturbationProfile& betatilde,
                                  double l) {
  if (!(l > 0.0)) throw DomainError("scale factor must be positive");
  std::vector<Piece> scaled = betatilde.pieces();
  for (auto& p : scaled) {
    p.center *= l;
    p.halfwidth *= l;
  }
  return PerturbationProfile(std::move(scaled));
}

PerturbationProfile make_bump(double center, double halfwidth,
                              double amplitude) {
  return PerturbationProfile({{Shape::SmoothBump, center, halfwidth, amplitude, {}}});
}

PerturbationProfile make_odd_bump(double center, double halfwidth,
                                  double amplitude) {
  return PerturbationProfile({{Shape::OddBump, center, halfwidth, amplitude, {}}});
}

PerturbationProfile make_box(double center, double halfwidth,
                             double amplitude) {
  return PerturbationProfile({{Shape::Box, center, halfwidth, amplitude, {}}});
}

}  // namespace ptwg
