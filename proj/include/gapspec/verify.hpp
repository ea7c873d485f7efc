#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gapspec/kernels.hpp"
#include "gapspec/operator.hpp"

namespace gapspec::verify {

/// One scan over a grid of t values. For eigenvalue scans rel_error is
/// |numeric - predicted| / |predicted|; for determinant scans numeric and predicted are
/// log-determinants and rel_error holds |numeric - predicted|, the relative error of D itself
/// to first order.
struct ScanResult {
  std::string kind;
  Family family = Family::Sine;
  double a = 0.0;
  int index = 0;       // eigenvalue index or q
  double chi = 0.0;    // det scans
  int p = 0;           // det scans
  double exponent = 0.0;  // error exponent used for the fitted constant

  std::vector<double> grid;  // t
  std::vector<double> s;
  std::vector<double> v;     // det and stokes scans
  std::vector<double> numeric;
  std::vector<double> predicted;
  std::vector<double> rel_error;
  std::vector<bool> valid;
  std::vector<std::string> notes;

  int n = 0;
  std::vector<double> truncation;
  double seconds = 0.0;

  std::optional<double> fitted_constant;  // max error * bound^{-1} over valid points
  std::optional<double> fitted_slope;     // least squares d log(err) / d log(t)

  std::size_t size() const { return grid.size(); }
};

/// 1 - lambda_i from the Nystrom spectrum against the closed-form law.
/// Points with 1 - lambda_i < 1e-13 are marked invalid.
ScanResult eig_ratio_scan(Family family, int i, const std::vector<double>& t_grid, double a = 0.0, int n = 100,
                          int jobs = 1);

/// log D(J; gamma) along v = stokes_v(family, t, chi) against the transition expansion.
ScanResult det_ratio_scan(Family family, double chi, const std::vector<double>& t_grid, double a = 0.0,
                          int n = 100, int jobs = 1, double constant_scale = 1.0);

/// log D(J; 1) against the gap expansion; predicted carries the fitted prefactor
/// exp(log D - leading terms) in numeric and the constant in predicted (both as values, not logs).
ScanResult gap_constant_scan(Family family, const std::vector<double>& s_grid, double a = 0.0, int n = 100,
                             int jobs = 1);

struct LidskiiSplit {
  std::vector<double> factors;  // 1 + e^{-v} mu_j, j < p
  double residual;              // product over j >= p
  double log_residual;
};

LidskiiSplit lidskii_split(const Spectrum& sp, double v, int p);

/// Locate v where the q-th Lidskii factor crosses 1 + t^{-1/2} (Airy) or 1 + 1/t (Bessel);
/// numeric holds the detected v, predicted stokes_v(t, q - 1/2), rel_error |offset| / predicted.
ScanResult stokes_crossing_scan(Family family, int q, const std::vector<double>& t_grid, double a = 0.0,
                                int n = 100, int jobs = 1);

/// 1 - <Lu, u>^2 / (|Lu|^2 |u|^2) on m interior points of a uniform grid, L the commuting
/// differential operator of the kernel. Arbitrary u (a function of the kernel variable).
double commuting_residual(const KernelSpec& spec, double s, const std::function<double(double)>& u, int m);
/// Same with u the i-th Nystrom eigenvector, interpolated barycentrically from the nodes.
double commuting_residual(const KernelSpec& spec, int i, double s, int n, int m);

/// Barycentric interpolant through values on the quadrature nodes of (spec, s, n).
std::function<double(double)> eigenfunction(const KernelSpec& spec, const Discretization& d, const Spectrum& sp,
                                            int i);

/// max |kernel_eval - airy_convolution| over sample_count points of [s, s+5]^2, diagonal included.
double convolution_check(double s, int sample_count, int n);

struct LogDerivCheck {
  double finite_difference;
  double asymptotic;
  double rel_error;
};

/// Central-difference derivative of log D against the asymptotic formula; v = inf means gamma = 1.
LogDerivCheck logderiv_check(const KernelSpec& spec, double s, double v, double chi, int n, double h);

/// Least-squares slope of log(y) against log(x) over positive entries.
std::optional<double> fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// True if y decreases along the sequence with at most `tolerated` violations.
bool decreasing(const std::vector<double>& y, int tolerated = 1);

}  // namespace gapspec::verify
