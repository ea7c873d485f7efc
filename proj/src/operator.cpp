#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "gapspec/errors.hpp"
#include "gapspec/operator.hpp"

namespace gapspec {

std::string Discretization::summary() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s a=%.17g s=%.17g n=%d truncation=%.17g", family_name(spec.family).c_str(),
                spec.a, interval.s(), n, truncation);
  return buf;
}

Discretization build_discretization(const KernelSpec& spec, const IntervalSpec& interval, int n, Exec exec) {
  Quadrature q = kernel_quadrature(spec, interval, n);
  double trunc = spec.family == Family::Airy ? q.hi : interval.hi();
  Matrix m = assemble_matrix(spec, q, exec);
  return Discretization{spec, interval, n, trunc, std::move(q), std::move(m)};
}

Spectrum Spectrum::from_values(std::vector<double> values, std::string meta) {
  Spectrum sp;
  sp.n = static_cast<int>(values.size());
  sp.meta = std::move(meta);
  for (double& v : values) {
    if (!std::isfinite(v) || v < -kSpectrumTolerance || v > 1.0 + kSpectrumTolerance) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "eigenvalue %.17g outside (-1e-10, 1+1e-10)", v);
      throw NumericalError(buf);
    }
    if (v < kSpectrumFloor) {
      if (v != 0.0) ++sp.clamped;
      v = 0.0;
    } else if (v > kSpectrumCeiling) {
      ++sp.clamped;
      v = kSpectrumCeiling;
    }
  }
  std::stable_sort(values.begin(), values.end(), std::greater<double>());
  sp.eigenvalues = std::move(values);
  return sp;
}

Spectrum compute_spectrum(const Discretization& d, bool want_vectors) {
  EigenResult r = jacobi_eigen(d.matrix, want_vectors);
  Spectrum sp = Spectrum::from_values(std::move(r.values), d.summary());
  sp.vectors = std::move(r.vectors);
  return sp;
}

Coupling Coupling::from_excess(double v) {
  if (!(v > 0.0)) throw ArgumentError("v = -log(1 - gamma) must be positive");
  double c = std::exp(-v);
  return {1.0 - c, c, true};
}

double lidskii_factor(double lambda, const Coupling& c) {
  if (c.from_v) return (1.0 - lambda) + c.complement * lambda;
  return 1.0 - c.gamma * lambda;
}

double fredholm_det(const Spectrum& sp, const Coupling& c) {
  double p = 1.0;
  for (double l : sp.eigenvalues) p *= lidskii_factor(l, c);
  return p;
}

double fredholm_det(const Spectrum& sp, double gamma) { return fredholm_det(sp, Coupling::from_gamma(gamma)); }

double log_fredholm_det(const Spectrum& sp, const Coupling& c) {
  double s = 0.0;
  for (double l : sp.eigenvalues) {
    double f = lidskii_factor(l, c);
    if (!(f > 0.0)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "log_fredholm_det: factor 1 - gamma*lambda = %.3g at lambda = %.17g", f, l);
      throw PoleError(buf);
    }
    s += std::log(f);
  }
  return s;
}

double log_fredholm_det(const Spectrum& sp, double gamma) {
  return log_fredholm_det(sp, Coupling::from_gamma(gamma));
}

std::vector<double> mu_values(const Spectrum& sp) {
  std::vector<double> mu;
  mu.reserve(sp.eigenvalues.size());
  for (double l : sp.eigenvalues) {
    double c = 1.0 - l;
    if (c < 1e-15) throw DegeneracyError("eigenvalue equal to 1 within 1e-15; lambda/(1-lambda) undefined");
    mu.push_back(l / c);
  }
  return mu;
}

std::vector<double> elementary_symmetric(const std::vector<double>& x, int nmax) {
  std::vector<double> e(nmax + 1, 0.0);
  e[0] = 1.0;
  int filled = 0;
  for (double v : x) {
    filled = std::min(filled + 1, nmax);
    for (int k = filled; k >= 1; --k) e[k] += v * e[k - 1];
  }
  return e;
}

std::vector<double> counting_distribution(const Spectrum& sp, int nmax, double gamma) {
  if (nmax < 0) throw ArgumentError("counting_distribution: nmax must be >= 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ArgumentError("counting_distribution: gamma must lie in [0, 1]");
  // thinned spectrum gamma*lambda_i
  std::vector<double> scaled;
  scaled.reserve(sp.eigenvalues.size());
  for (double l : sp.eigenvalues) scaled.push_back(gamma * l);
  Spectrum thinned;
  thinned.eigenvalues = std::move(scaled);
  std::vector<double> mu = mu_values(thinned);
  double log_e0 = 0.0;
  for (double l : thinned.eigenvalues) log_e0 += std::log1p(-l);
  std::vector<double> e = elementary_symmetric(mu, nmax);
  double e0 = std::exp(log_e0);
  for (double& v : e) v *= e0;
  return e;
}

double counting_prob(const Spectrum& sp, int n, double gamma) {
  if (n < 0) throw ArgumentError("counting_prob: n must be >= 0");
  return counting_distribution(sp, n, gamma)[n];
}

double counting_ratio(const Spectrum& sp, int n) {
  if (n < 1) throw ArgumentError("counting_ratio: n must be >= 1");
  return elementary_symmetric(mu_values(sp), n)[n];
}

double trace_norm(const KernelSpec& spec, const IntervalSpec& interval, int n) {
  if (n < 20) throw ArgumentError("trace_norm needs n >= 20");
  Quadrature q = kernel_quadrature(spec, interval, n);
  double t = 0.0;
  for (int i = 0; i < q.size(); ++i) t += q.weights[i] * kernel_diag(spec, q.nodes[i]);
  return t;
}

double log_det_at(const KernelSpec& spec, double s, const Coupling& c, int n) {
  Discretization d = build_discretization(spec, IntervalSpec(spec.family, s), n);
  return log_fredholm_det(compute_spectrum(d), c);
}

double d_ds_log_det(const KernelSpec& spec, double s, const Coupling& c, double h, int n) {
  if (!(h >= 1e-5 && h <= 1e-2)) throw ArgumentError("d_ds_log_det: h must lie in [1e-5, 1e-2]");
  if (c.gamma == 0.0) return 0.0;
  return (log_det_at(spec, s + h, c, n) - log_det_at(spec, s - h, c, n)) / (2.0 * h);
}

double d_ds_log_det(const KernelSpec& spec, double s, double gamma, double h, int n) {
  if (!(gamma <= 1.0 - 1e-14 || gamma == 1.0)) {
    throw ArgumentError("d_ds_log_det: gamma must be <= 1 - 1e-14 or exactly 1");
  }
  return d_ds_log_det(spec, s, Coupling::from_gamma(gamma), h, n);
}

}  // namespace gapspec
