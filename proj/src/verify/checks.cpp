#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "gapspec/asymptotics.hpp"
#include "gapspec/errors.hpp"
#include "gapspec/verify.hpp"

namespace gapspec::verify {

namespace {

// Support of the interpolant and of the differential grid.
std::pair<double, double> support(const KernelSpec& spec, double s) {
  switch (spec.family) {
    case Family::Sine: return {-s, s};
    case Family::Airy: return {s, airy_truncation(s)};
    case Family::Bessel: return {0.0, s};
  }
  return {0.0, 0.0};
}

// Reference coordinate in [-1, 1] in which the Nystrom nodes are Gauss-Legendre points.
double to_reference(const KernelSpec& spec, double s, double x) {
  auto [lo, hi] = support(spec, s);
  if (spec.family == Family::Bessel) return 2.0 * std::sqrt(std::max(x, 0.0) / s) - 1.0;
  return (2.0 * x - lo - hi) / (hi - lo);
}

// Sturm-Liouville data: L f = (p f')' - q f.
struct SturmLiouville {
  Family family;
  double s;
  double a;
  double p(double x) const {
    switch (family) {
      case Family::Sine: return s * s - x * x;
      case Family::Airy: return x - s;
      case Family::Bessel: return x * (s - x);
    }
    return 0.0;
  }
  double q(double x) const {
    switch (family) {
      case Family::Sine: return x * x;
      case Family::Airy: return x * (x - s);
      case Family::Bessel: return a * a * s / (4.0 * x) + x / 4.0;
    }
    return 0.0;
  }
};

}  // namespace

double commuting_residual(const KernelSpec& spec, double s, const std::function<double(double)>& u, int m) {
  if (m < 10) throw ArgumentError("commuting_residual needs m >= 10");
  IntervalSpec iv(spec.family, s);  // validates s
  auto [lo, hi] = support(spec, s);
  SturmLiouville op{spec.family, s, spec.a};
  double h = (hi - lo) / (m + 1);
  std::vector<double> f(m + 2);
  for (int j = 0; j <= m + 1; ++j) f[j] = u(lo + j * h);
  double lu_u = 0.0, lu_lu = 0.0, u_u = 0.0;
  for (int j = 1; j <= m; ++j) {
    double x = lo + j * h;
    double lu = (op.p(x + 0.5 * h) * (f[j + 1] - f[j]) - op.p(x - 0.5 * h) * (f[j] - f[j - 1])) / (h * h) -
                op.q(x) * f[j];
    lu_u += lu * f[j];
    lu_lu += lu * lu;
    u_u += f[j] * f[j];
  }
  if (lu_lu == 0.0 || u_u == 0.0) throw NumericalError("commuting_residual: zero vector");
  return 1.0 - lu_u * lu_u / (lu_lu * u_u);
}

std::function<double(double)> eigenfunction(const KernelSpec& spec, const Discretization& d, const Spectrum& sp,
                                            int i) {
  const int n = d.n;
  if (sp.vectors.n != n) throw ArgumentError("eigenfunction needs a spectrum with eigenvectors");
  if (i < 0 || i >= n) throw ArgumentError("eigenvector index out of range");
  Quadrature gl = gauss_legendre(n);
  auto r = std::make_shared<std::vector<double>>(gl.nodes);
  auto bw = std::make_shared<std::vector<double>>(n);
  auto fv = std::make_shared<std::vector<double>>(n);
  double norm = 0.0;
  for (int j = 0; j < n; ++j) {
    double x = gl.nodes[j];
    (*bw)[j] = (j % 2 ? -1.0 : 1.0) * std::sqrt((1.0 - x * x) * gl.weights[j]);
    (*fv)[j] = sp.vectors(j, i) / std::sqrt(d.quad.weights[j]);
    norm += d.quad.weights[j] * (*fv)[j] * (*fv)[j];
  }
  norm = std::sqrt(norm);
  for (double& v : *fv) v /= norm;
  double s = d.interval.s();
  return [spec, s, r, bw, fv](double x) {
    double z = to_reference(spec, s, x);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < r->size(); ++j) {
      double dz = z - (*r)[j];
      if (dz == 0.0) return (*fv)[j];
      double c = (*bw)[j] / dz;
      num += c * (*fv)[j];
      den += c;
    }
    return num / den;
  };
}

double commuting_residual(const KernelSpec& spec, int i, double s, int n, int m) {
  Discretization d = build_discretization(spec, IntervalSpec(spec.family, s), n);
  Spectrum sp = compute_spectrum(d, true);
  if (sp.eigenvalues[i] < 1e-10) throw NumericalError("commuting_residual: eigenvalue below 1e-10");
  return commuting_residual(spec, s, eigenfunction(spec, d, sp, i), m);
}

double convolution_check(double s, int sample_count, int n) {
  if (sample_count < 1) throw ArgumentError("convolution_check needs at least one sample");
  std::mt19937 rng(20240611u);
  std::uniform_real_distribution<double> u(s, s + 5.0);
  KernelSpec airy = KernelSpec::airy();
  double worst = 0.0;
  int diagonal = std::max(1, sample_count / 5);
  for (int k = 0; k < sample_count; ++k) {
    double x = u(rng);
    double y = k < diagonal ? x : u(rng);
    double upper = airy_convolution_upper(x, y);
    double dev = std::fabs(kernel_eval(airy, x, y) - airy_convolution(x, y, upper, n));
    worst = std::max(worst, dev);
  }
  return worst;
}

LogDerivCheck logderiv_check(const KernelSpec& spec, double s, double v, double chi, int n, double h) {
  if (!(v > 0.0)) throw ArgumentError("logderiv_check: the expansion assumes v > 0 (gamma = 0 is trivial)");
  LogDerivCheck out{};
  switch (spec.family) {
    case Family::Airy: out.asymptotic = asymp::airy_logderiv_asymp(s, v, chi); break;
    case Family::Bessel: out.asymptotic = asymp::bessel_logderiv_asymp(s, v, chi, spec.a); break;
    case Family::Sine: throw ArgumentError("logderiv_check supports Airy and Bessel");
  }
  Coupling c = std::isinf(v) ? Coupling::from_gamma(1.0) : Coupling::from_excess(v);
  out.finite_difference = d_ds_log_det(spec, s, c, h, n);
  out.rel_error = std::fabs(out.finite_difference - out.asymptotic) / std::fabs(out.asymptotic);
  return out;
}

}  // namespace gapspec::verify
