#pragma once

#include <string>
#include <vector>

#include "gapspec/kernels.hpp"
#include "gapspec/linalg.hpp"
#include "gapspec/quadrature.hpp"

namespace gapspec {

enum class Exec { Serial, Parallel };

/// Upper end of the truncated Airy interval: max(s + 10, 33.75^{2/3}).
double airy_truncation(double s);

/// Nodes and weights for the kernel's interval. Sine and Airy use the affine image of
/// Gauss-Legendre; Bessel uses lambda = u^2 with u Gauss-Legendre on (0, sqrt s).
Quadrature kernel_quadrature(const KernelSpec& spec, const IntervalSpec& interval, int n);

/// A_ij = sqrt(w_i) K(x_i, x_j) sqrt(w_j). The parallel path caches phi/psi per node;
/// the serial path calls kernel_eval directly and is kept as the reference.
Matrix assemble_matrix(const KernelSpec& spec, const Quadrature& q, Exec exec = Exec::Parallel);

struct Discretization {
  KernelSpec spec;
  IntervalSpec interval;
  int n;
  double truncation;  // effective upper endpoint
  Quadrature quad;
  Matrix matrix;

  std::string summary() const;
};

Discretization build_discretization(const KernelSpec& spec, const IntervalSpec& interval, int n,
                                    Exec exec = Exec::Parallel);

struct Spectrum {
  std::vector<double> eigenvalues;  // descending, inside [0, 1 - 1e-16]
  int n = 0;
  std::string meta;
  int clamped = 0;  // eigenvalues moved into [0, 1 - 1e-16]
  Matrix vectors;   // unit eigenvectors of the symmetric matrix, when requested

  /// Validates, clamps and sorts arbitrary values (used for hand-made spectra).
  static Spectrum from_values(std::vector<double> values, std::string meta = "");
};

inline constexpr double kSpectrumTolerance = 1e-10;  // allowed excursion outside [0, 1]
inline constexpr double kSpectrumFloor = 1e-300;
inline constexpr double kSpectrumCeiling = 1.0 - 1e-16;

Spectrum compute_spectrum(const Discretization& d, bool want_vectors = false);

/// gamma together with 1 - gamma. Built from v = -log(1 - gamma), the complement
/// keeps full relative precision when gamma is within rounding of 1.
struct Coupling {
  double gamma;
  double complement;
  bool from_v;

  static Coupling from_gamma(double gamma) { return {gamma, 1.0 - gamma, false}; }
  static Coupling from_excess(double v);
};

/// 1 - gamma lambda.
double lidskii_factor(double lambda, const Coupling& c);

double fredholm_det(const Spectrum& sp, double gamma);
double fredholm_det(const Spectrum& sp, const Coupling& c);
/// Throws PoleError if some factor 1 - gamma lambda_i <= 0.
double log_fredholm_det(const Spectrum& sp, double gamma);
double log_fredholm_det(const Spectrum& sp, const Coupling& c);

/// mu_i = lambda_i / (1 - lambda_i); DegeneracyError if 1 - lambda_i < 1e-15.
std::vector<double> mu_values(const Spectrum& sp);
/// e_0 .. e_nmax of the given values by the ascending recurrence.
std::vector<double> elementary_symmetric(const std::vector<double>& x, int nmax);

double counting_prob(const Spectrum& sp, int n, double gamma = 1.0);
double counting_ratio(const Spectrum& sp, int n);
std::vector<double> counting_distribution(const Spectrum& sp, int nmax, double gamma = 1.0);

/// sum w_i K(x_i, x_i) on the discretization grid, n >= 20.
double trace_norm(const KernelSpec& spec, const IntervalSpec& interval, int n);

/// Central difference (L(s+h) - L(s-h)) / 2h of the log-determinant at matched n.
double d_ds_log_det(const KernelSpec& spec, double s, double gamma, double h, int n);
double d_ds_log_det(const KernelSpec& spec, double s, const Coupling& c, double h, int n);

/// log D(J; c) straight from (spec, s, n).
double log_det_at(const KernelSpec& spec, double s, const Coupling& c, int n);

}  // namespace gapspec
