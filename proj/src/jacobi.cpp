#include <algorithm>
#include <cmath>
#include <numeric>

#include "gapspec/errors.hpp"
#include "gapspec/linalg.hpp"

namespace gapspec {

double Matrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double v : data) s += v * v;
  return std::sqrt(s);
}

double Matrix::max_asymmetry() const {
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m = std::max(m, std::fabs((*this)(i, j) - (*this)(j, i)));
  return m;
}

namespace {

inline void rotate(Matrix& a, int i, int j, int k, int l, double s, double tau) {
  double g = a(i, j), h = a(k, l);
  a(i, j) = g - s * (h + g * tau);
  a(k, l) = h + s * (g - h * tau);
}

}  // namespace

EigenResult jacobi_eigen(const Matrix& input, bool want_vectors) {
  const int n = input.n;
  Matrix a = input;
  Matrix v;
  if (want_vectors) {
    v = Matrix(n);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;
  }
  std::vector<double> d(n), b(n), z(n, 0.0);
  for (int i = 0; i < n; ++i) b[i] = d[i] = a(i, i);
  const double norm = input.frobenius();

  EigenResult out;
  bool converged = n <= 1;
  for (int sweep = 1; sweep <= 100 && !converged; ++sweep) {
    double off = 0.0, sm = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        off += a(p, q) * a(p, q);
        sm += std::fabs(a(p, q));
      }
    if (sm == 0.0 || std::sqrt(2.0 * off) <= 1e-15 * norm) {
      converged = true;
      out.sweeps = sweep - 1;
      break;
    }
    double thresh = sweep < 4 ? 0.2 * sm / (double(n) * n) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        double g = 100.0 * std::fabs(apq);
        if (sweep > 4 && std::fabs(d[p]) + g == std::fabs(d[p]) && std::fabs(d[q]) + g == std::fabs(d[q])) {
          a(p, q) = 0.0;
          continue;
        }
        if (std::fabs(apq) <= thresh) continue;
        double h = d[q] - d[p];
        double t;
        if (std::fabs(h) + g == std::fabs(h)) {
          t = apq / h;
        } else {
          double theta = 0.5 * h / apq;
          t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        double tau = s / (1.0 + c);
        h = t * apq;
        z[p] -= h;
        z[q] += h;
        d[p] -= h;
        d[q] += h;
        a(p, q) = 0.0;
        for (int j = 0; j < p; ++j) rotate(a, j, p, j, q, s, tau);
        for (int j = p + 1; j < q; ++j) rotate(a, p, j, j, q, s, tau);
        for (int j = q + 1; j < n; ++j) rotate(a, p, j, q, j, s, tau);
        if (want_vectors)
          for (int j = 0; j < n; ++j) rotate(v, j, p, j, q, s, tau);
      }
    }
    for (int p = 0; p < n; ++p) {
      b[p] += z[p];
      d[p] = b[p];
      z[p] = 0.0;
    }
  }
  if (!converged) throw NumericalError("jacobi_eigen: no convergence in 100 sweeps");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return d[i] > d[j]; });
  out.values.resize(n);
  for (int k = 0; k < n; ++k) out.values[k] = d[order[k]];
  if (want_vectors) {
    out.vectors = Matrix(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace gapspec
