#include "gapspec/quadrature.hpp"

#include <cmath>
#include <string>

#include "gapspec/errors.hpp"

namespace gapspec {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

Quadrature gauss_legendre(int n) {
  if (n < 1 || n > 2000) {
    throw ArgumentError("gauss_legendre: n = " + std::to_string(n) + " outside [1, 2000]");
  }
  Quadrature q;
  q.nodes.assign(n, 0.0);
  q.weights.assign(n, 0.0);
  const double pi = 3.14159265358979323846;
  int half = n / 2;
  for (int i = 0; i < half; ++i) {
    // i-th largest root, Chebyshev-like initial guess
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    legendre(n, x, p, dp);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[n - 1 - i] = x;
    q.nodes[i] = -x;
    q.weights[n - 1 - i] = w;
    q.weights[i] = w;
  }
  if (n % 2 == 1) {
    // P_n'(0) from the recurrence avoids the 0/0 in legendre()
    double p0 = 1.0, p1 = 0.0, d0 = 0.0, d1 = 1.0;
    for (int k = 2; k <= n; ++k) {
      double p2 = (-(k - 1.0) * p0) / k;
      double d2 = ((2.0 * k - 1.0) * p1 - (k - 1.0) * d0) / k;
      p0 = p1;
      p1 = p2;
      d0 = d1;
      d1 = d2;
    }
    q.nodes[half] = 0.0;
    q.weights[half] = 2.0 / (d1 * d1);
  }
  return q;
}

Quadrature map_to_interval(const Quadrature& q, double lo, double hi) {
  Quadrature out;
  out.lo = lo;
  out.hi = hi;
  double c = 0.5 * (hi + lo), r = 0.5 * (hi - lo);
  double scale = (hi - lo) / (q.hi - q.lo);
  double mid = 0.5 * (q.hi + q.lo);
  out.nodes.resize(q.nodes.size());
  out.weights.resize(q.weights.size());
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    out.nodes[i] = c + r * (q.nodes[i] - mid) / (0.5 * (q.hi - q.lo));
    out.weights[i] = q.weights[i] * scale;
  }
  return out;
}

}  // namespace gapspec
