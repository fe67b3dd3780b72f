#pragma once

#include <functional>
#include <vector>

namespace ptwg {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Rule of order n (exact for polynomials of degree 2n-1).  Rules are cached.
const GaussRule& gauss_legendre(int n);

// Number of Gauss nodes used per panel by the composite quadratures below.
struct QuadratureSpec {
  int nodes_per_panel = 128;
};

// Composite Gauss quadrature of f over consecutive panels delimited by
// `breaks` (ascending, at least two entries).
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& breaks,
                        const QuadratureSpec& quad = {});

// Sorted union of two breakpoint lists with duplicates (within 1e-14 of each
// other) removed.
std::vector<double> merge_breaks(std::vector<double> a,
                                 const std::vector<double>& b);

// Inserts x into the breakpoint list if it lies strictly inside the range.
std::vector<double> split_at(std::vector<double> breaks, double x);

}  // namespace ptwg
