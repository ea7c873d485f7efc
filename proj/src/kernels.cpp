#include "gapspec/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "gapspec/errors.hpp"
#include "gapspec/quadrature.hpp"
#include "gapspec/specfun.hpp"

namespace gapspec {

namespace sf = specfun;

std::string family_name(Family f) {
  switch (f) {
    case Family::Sine: return "sine";
    case Family::Airy: return "airy";
    case Family::Bessel: return "bessel";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "sine" || s == "sin") return Family::Sine;
  if (s == "airy" || s == "ai") return Family::Airy;
  if (s == "bessel" || s == "bess") return Family::Bessel;
  throw ArgumentError("unknown kernel family '" + name + "'");
}

KernelSpec KernelSpec::bessel(double a) {
  if (!(a > -1.0) || !std::isfinite(a)) throw DomainError("Bessel kernel needs order a > -1");
  return {Family::Bessel, a};
}

IntervalSpec::IntervalSpec(Family family, double s) : family_(family), s_(s) {
  if (!std::isfinite(s)) throw ArgumentError("interval endpoint must be finite");
  if (family != Family::Airy && !(s > 0.0)) {
    throw ArgumentError(family_name(family) + " interval needs s > 0");
  }
}

double IntervalSpec::lo() const {
  switch (family_) {
    case Family::Sine: return -s_;
    case Family::Airy: return s_;
    case Family::Bessel: return 0.0;
  }
  return 0.0;
}

double IntervalSpec::hi() const {
  if (family_ == Family::Airy) return std::numeric_limits<double>::infinity();
  return s_;
}

std::optional<double> IntervalSpec::t() const {
  switch (family_) {
    case Family::Sine: return s_;
    case Family::Airy:
      if (s_ < 0.0) return std::pow(-s_, 1.5);
      return std::nullopt;
    case Family::Bessel: return std::sqrt(s_);
  }
  return std::nullopt;
}

namespace {

void check_domain(const KernelSpec& spec, double x) {
  if (!std::isfinite(x)) throw DomainError("kernel argument must be finite");
  if (spec.family == Family::Bessel && x < 0.0) throw DomainError("Bessel kernel needs lambda >= 0");
  if (spec.family == Family::Airy && !sf::airy_domain.contains(x)) {
    throw DomainError("Airy kernel argument outside [-40, 200]");
  }
}

constexpr int kOrder = 7;  // Taylor coefficients 0..6 of the ODE solution

// Taylor coefficients of phi and psi about m.
void iiks_taylor(const KernelSpec& spec, double m, double* phi, double* psi) {
  double u[kOrder + 1] = {};
  if (spec.family == Family::Airy) {
    sf::AiryPair p = sf::airy(m);
    u[0] = p.ai;
    u[1] = p.aip;
    for (int k = 0; k + 2 <= kOrder; ++k) {
      double prev = k >= 1 ? u[k - 1] : 0.0;
      u[k + 2] = (m * u[k] + prev) / ((k + 1.0) * (k + 2.0));
    }
    for (int k = 0; k < 6; ++k) {
      phi[k] = u[k];
      psi[k] = (k + 1.0) * u[k + 1];
    }
    return;
  }
  // Bessel: u(l) = J_a(sqrt l) solves 4 l^2 u'' + 4 l u' + (l - a^2) u = 0.
  double a = spec.a;
  double x = std::sqrt(m);
  sf::BesselPair j = sf::bessel_j_pair(a, x);
  u[0] = j.j;
  u[1] = (a / x * j.j - j.j_next) / (2.0 * x);
  for (int k = 0; k + 2 <= kOrder; ++k) {
    double prev = k >= 1 ? u[k - 1] : 0.0;
    u[k + 2] = -(4.0 * m * (k + 1.0) * (2.0 * k + 1.0) * u[k + 1] + (4.0 * k * k + m - a * a) * u[k] + prev) /
               (4.0 * m * m * (k + 1.0) * (k + 2.0));
  }
  for (int k = 0; k < 6; ++k) {
    phi[k] = (a - 2.0 * k) * u[k] - 2.0 * m * (k + 1.0) * u[k + 1];
    psi[k] = 0.5 * u[k];
  }
}

}  // namespace

IiksPair iiks_pair(const KernelSpec& spec, double x) {
  check_domain(spec, x);
  switch (spec.family) {
    case Family::Sine: return {std::sin(x) / sf::pi, std::cos(x)};
    case Family::Airy: {
      sf::AiryPair p = sf::airy(x);
      return {p.ai, p.aip};
    }
    case Family::Bessel: {
      double r = std::sqrt(x);
      sf::BesselPair p = sf::bessel_j_pair(spec.a, r);
      return {r * p.j_next, 0.5 * p.j};
    }
  }
  return {0.0, 0.0};
}

double near_diagonal_switch(const KernelSpec& spec, double lambda, double mu) {
  // The Bessel Taylor coefficients scale like 1/m^k, so the switch is relative there.
  if (spec.family == Family::Bessel) return 1e-4 * (std::fabs(lambda) + std::fabs(mu));
  return 1e-4 * std::fmax(1.0, std::fabs(lambda) + std::fabs(mu));
}

namespace detail {

double kernel_quotient(const KernelSpec& spec, double lambda, double mu) {
  double x = std::fmax(lambda, mu), y = std::fmin(lambda, mu);
  if (spec.family == Family::Sine) return std::sin(x - y) / (sf::pi * (x - y));
  IiksPair px = iiks_pair(spec, x), py = iiks_pair(spec, y);
  return (px.phi * py.psi - px.psi * py.phi) / (x - y);
}

double kernel_taylor(const KernelSpec& spec, double lambda, double mu) {
  double x = std::fmax(lambda, mu), y = std::fmin(lambda, mu);
  double d = x - y;
  if (spec.family == Family::Sine) {
    double d2 = d * d;
    return (1.0 - d2 / 6.0 * (1.0 - d2 / 20.0)) / sf::pi;
  }
  double m = 0.5 * (x + y);
  check_domain(spec, m);
  double phi[6], psi[6];
  iiks_taylor(spec, m, phi, psi);
  // N(d) = sum_n (d/2)^n sum_{i+j=n} (-1)^j (phi_i psi_j - psi_i phi_j); only odd n survive.
  double result = 0.0;
  double scale = 0.5;  // d^{n-1} / 2^n
  for (int n = 1; n <= 5; n += 2) {
    double c = 0.0;
    for (int i = 0; i <= n; ++i) {
      int j = n - i;
      double sign = (j % 2) ? -1.0 : 1.0;
      c += sign * (phi[i] * psi[j] - psi[i] * phi[j]);
    }
    result += c * scale;
    scale *= 0.25 * d * d;
  }
  return result;
}

}  // namespace detail

double kernel_diag(const KernelSpec& spec, double lambda) {
  check_domain(spec, lambda);
  switch (spec.family) {
    case Family::Sine: return 1.0 / sf::pi;
    case Family::Airy: {
      sf::AiryPair p = sf::airy(lambda);
      return p.aip * p.aip - lambda * p.ai * p.ai;
    }
    case Family::Bessel: {
      double a = spec.a;
      if (lambda == 0.0) {
        if (a == 0.0) return 0.25;
        if (a > 0.0) return 0.0;
        throw DomainError("Bessel kernel diagonal is infinite at 0 for a < 0");
      }
      double x = std::sqrt(lambda);
      sf::BesselPair p = sf::bessel_j_pair(a, x);
      return 0.25 * (p.j * p.j + p.j_next * p.j_next - 2.0 * a / x * p.j * p.j_next);
    }
  }
  return 0.0;
}

double kernel_eval(const KernelSpec& spec, double lambda, double mu) {
  check_domain(spec, lambda);
  check_domain(spec, mu);
  if (lambda == mu) return kernel_diag(spec, lambda);
  if (std::fabs(lambda - mu) <= near_diagonal_switch(spec, lambda, mu)) {
    return detail::kernel_taylor(spec, lambda, mu);
  }
  return detail::kernel_quotient(spec, lambda, mu);
}

double kernel_eval_cached(const KernelSpec& spec, double lambda, const IiksPair& pl, double mu,
                          const IiksPair& pm) {
  if (lambda == mu) return kernel_diag(spec, lambda);
  if (std::fabs(lambda - mu) <= near_diagonal_switch(spec, lambda, mu)) {
    return detail::kernel_taylor(spec, lambda, mu);
  }
  double x = std::fmax(lambda, mu), y = std::fmin(lambda, mu);
  if (spec.family == Family::Sine) return std::sin(x - y) / (sf::pi * (x - y));
  const IiksPair& px = lambda > mu ? pl : pm;
  const IiksPair& py = lambda > mu ? pm : pl;
  return (px.phi * py.psi - px.psi * py.phi) / (x - y);
}

double airy_convolution(double lambda, double mu, double upper, int n) {
  if (n < 40) throw ArgumentError("airy_convolution needs n >= 40");
  if (!(upper > 0.0)) throw ArgumentError("airy_convolution needs upper > 0");
  Quadrature q = map_to_interval(gauss_legendre(n), 0.0, upper);
  // Summation in node order for both arguments so (lambda, mu) and (mu, lambda) agree exactly.
  double sum = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    double t = q.nodes[i];
    sum += q.weights[i] * (sf::airy_ai(lambda + t) * sf::airy_ai(mu + t));
  }
  return sum;
}

double airy_convolution_upper(double lambda, double mu) {
  double lo = std::fmin(lambda, mu);
  double upper = std::fmax(0.5, std::ceil(2.0 * std::fmax(0.0, -lo)) / 2.0);
  while (upper < 150.0) {
    double x = lambda + upper, y = mu + upper;
    if (x > 0.0 && y > 0.0 && std::fabs(sf::airy_ai(x) * sf::airy_ai(y)) < 1e-18) return upper;
    upper += 0.5;
  }
  return upper;
}

}  // namespace gapspec
