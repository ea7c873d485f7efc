#include <cmath>
#include <exception>
#include <string>
#include <vector>

#include "gapspec/errors.hpp"
#include "gapspec/operator.hpp"

namespace gapspec {

double airy_truncation(double s) {
  // (4/3) M^{3/2} >= 45 puts the diagonal tail below 1e-17
  static const double m_min = std::pow(33.75, 2.0 / 3.0);
  return std::fmax(s + 10.0, m_min);
}

Quadrature kernel_quadrature(const KernelSpec& spec, const IntervalSpec& interval, int n) {
  if (spec.family != interval.family()) {
    throw ArgumentError("interval family " + family_name(interval.family()) + " does not match kernel " +
                        family_name(spec.family));
  }
  Quadrature gl = gauss_legendre(n);
  switch (spec.family) {
    case Family::Sine: return map_to_interval(gl, -interval.s(), interval.s());
    case Family::Airy: return map_to_interval(gl, interval.s(), airy_truncation(interval.s()));
    case Family::Bessel: {
      // lambda = u^2 removes the sqrt(lambda) branch point of J_a(sqrt lambda) at 0
      Quadrature u = map_to_interval(gl, 0.0, std::sqrt(interval.s()));
      Quadrature q;
      q.lo = 0.0;
      q.hi = interval.s();
      q.nodes.resize(n);
      q.weights.resize(n);
      for (int i = 0; i < n; ++i) {
        q.nodes[i] = u.nodes[i] * u.nodes[i];
        q.weights[i] = 2.0 * u.nodes[i] * u.weights[i];
      }
      return q;
    }
  }
  return gl;
}

Matrix assemble_matrix(const KernelSpec& spec, const Quadrature& q, Exec exec) {
  const int n = q.size();
  Matrix a(n);
  std::vector<double> sw(n);
  for (int i = 0; i < n; ++i) sw[i] = std::sqrt(q.weights[i]);

  if (exec == Exec::Serial) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        double v = sw[i] * kernel_eval(spec, q.nodes[i], q.nodes[j]) * sw[j];
        a(i, j) = v;
        a(j, i) = v;
      }
    }
    return a;
  }

  std::vector<IiksPair> pairs(n);
  // Exceptions may not escape an OpenMP region; collect and rethrow.
  std::vector<std::string> errors(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    try {
      pairs[i] = iiks_pair(spec, q.nodes[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw DomainError(e);

#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < n; ++i) {
    try {
      for (int j = i; j < n; ++j) {
        double v = sw[i] * kernel_eval_cached(spec, q.nodes[i], pairs[i], q.nodes[j], pairs[j]) * sw[j];
        a(i, j) = v;
        a(j, i) = v;
      }
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw DomainError(e);
  return a;
}

}  // namespace gapspec
