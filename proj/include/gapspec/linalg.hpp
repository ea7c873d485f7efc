#pragma once

#include <vector>

namespace gapspec {

/// Dense row-major square matrix.
struct Matrix {
  int n = 0;
  std::vector<double> data;

  Matrix() = default;
  explicit Matrix(int size) : n(size), data(static_cast<size_t>(size) * size, 0.0) {}

  double& operator()(int i, int j) { return data[static_cast<size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return data[static_cast<size_t>(i) * n + j]; }

  double trace() const;
  double frobenius() const;
  double max_asymmetry() const;
};

struct EigenResult {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k belongs to values[k]; empty unless requested
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is below 1e-15 ||A||_F.
/// Throws NumericalError after 100 sweeps.
EigenResult jacobi_eigen(const Matrix& a, bool want_vectors);

}  // namespace gapspec
