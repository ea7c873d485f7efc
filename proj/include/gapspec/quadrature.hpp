#pragma once

#include <vector>

namespace gapspec {

struct Quadrature {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive
  double lo = -1.0;
  double hi = 1.0;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Legendre rule on [-1, 1], 1 <= n <= 2000.
Quadrature gauss_legendre(int n);

/// Affine image of q on [lo, hi].
Quadrature map_to_interval(const Quadrature& q, double lo, double hi);

}  // namespace gapspec
