#pragma once

#include <string>
#include <vector>

#include "ptwg/quadrature.hpp"

namespace ptwg {

// Primitive shapes for compactly supported boundary perturbations.  All are
// closed-form, so derivatives are exact; CustomSampled (cubic interpolation
// of tabulated values) exists for oracle tests only.
enum class Shape {
  SmoothBump,   // exp(1 - 1/(1-u^2)) on |u|<1
  OddBump,      // u * exp(1 - 1/(1-u^2))
  Box,          // indicator of |u|<1 (not differentiable)
  BumpD2,       // second derivative of the smooth bump
  CustomSampled
};

Shape shape_from_tag(const std::string& tag);
const char* shape_tag(Shape s);

struct Piece {
  Shape shape = Shape::SmoothBump;
  double center = 0.0;
  double halfwidth = 1.0;
  double amplitude = 1.0;
  std::vector<double> samples;  // CustomSampled: uniform on [c-w, c+w]
};

// Compactly supported perturbation profile, a sum of primitive pieces.
class PerturbationProfile {
 public:
  PerturbationProfile() = default;
  explicit PerturbationProfile(std::vector<Piece> pieces);

  // beta(x), or its first/second derivative.  Box pieces throw
  // NonSmoothProfile for order >= 1; CustomSampled supports order <= 2.
  double eval(double x, int order = 0) const;
  double operator()(double x) const { return eval(x); }

  const std::vector<Piece>& pieces() const { return pieces_; }
  // Support interval [a, b] (hull of the pieces); zero profile gives [0, 0].
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  bool smooth() const { return smooth_; }
  bool empty() const { return pieces_.empty(); }

  // Panel breakpoints for quadrature: support ends plus piece edges/centers.
  std::vector<double> breakpoints() const;

 private:
  std::vector<Piece> pieces_;
  double lo_ = 0.0, hi_ = 0.0;
  bool smooth_ = true;
};

struct ProfileMoments {
  double mean;       // integral of beta
  double l2norm_sq;  // integral of beta^2
  double mean_sq;    // integral of beta^2
};

ProfileMoments profile_moments(const PerturbationProfile& beta,
                               const QuadratureSpec& quad = {});

// x -> betatilde(x / l); support and mean scale by l.
PerturbationProfile profile_scale(const PerturbationProfile& betatilde,
                                  double l);

// Helpers used across the test suites.
PerturbationProfile make_bump(double center, double halfwidth,
                              double amplitude);
PerturbationProfile make_odd_bump(double center, double halfwidth,
                                  double amplitude);
PerturbationProfile make_box(double center, double halfwidth,
                             double amplitude);

}  // namespace ptwg
