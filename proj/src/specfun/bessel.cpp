#include <cmath>
#include <string>
#include <vector>

#include "gapspec/errors.hpp"
#include "gapspec/specfun.hpp"

namespace gapspec::specfun {

namespace {

double series_one(double a, double x) {
  // J_a(x) = (x/2)^a / Gamma(a+1) * sum (-x^2/4)^k / (k! (a+1)_k)
  double q = -0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (a + k));
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return std::exp(a * std::log(0.5 * x) - log_gamma(a + 1.0)) * sum;
}

double hankel_one(double a, double x) {
  // J_a(x) = sqrt(2/(pi x)) (P cos w - Q sin w), w = x - a pi/2 - pi/4
  double mu = 4.0 * a * a;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double prev = HUGE_VAL;
  for (int k = 1; k < 200; ++k) {
    double odd = 2.0 * k - 1;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    double mag = std::fabs(term);
    if (mag == 0.0) break;
    // Terms may dip while (2k-1)^2 passes mu; only growth past that point means divergence.
    if (mag > prev && odd * odd > mu) break;
    prev = mag;
    // Terms alternate between Q (odd k) and P (even k) with sign pattern -,+ per pair.
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (mag < 1e-17) break;
  }
  double phi = 0.5 * pi * a + 0.25 * pi;
  double cw = std::cos(x) * std::cos(phi) + std::sin(x) * std::sin(phi);
  double sw = std::sin(x) * std::cos(phi) - std::cos(x) * std::sin(phi);
  return std::sqrt(2.0 / (pi * x)) * (p * cw - q * sw);
}

}  // namespace

namespace detail {

BesselPair bessel_series(double a, double x) {
  if (x == 0.0) {
    if (a == 0.0) return {1.0, 0.0};
    if (a > 0.0) return {0.0, 0.0};
    throw DomainError("bessel_j: J_a(0) is infinite for a < 0");
  }
  return {series_one(a, x), series_one(a + 1.0, x)};
}

BesselPair bessel_miller(double a, double x) {
  // Backward recurrence f_{m-1} = (2(a+m)/x) f_m - f_{m+1} from an even start N,
  // normalised by (x/2)^a = Gamma(a+1) [f_0 + sum_{j>=1} (a+2j) g_j f_{2j}],
  // g_1 = 1, g_{j+1} = g_j (a+j)/(j+1).
  int n = static_cast<int>(std::ceil(std::fmax(x, a) + 25.0 + 10.0 * std::cbrt(x)));
  if (n % 2) ++n;
  int jmax = n / 2;
  std::vector<double> gj(jmax + 1);
  gj[0] = 1.0;
  gj[1] = 1.0;
  for (int j = 1; j < jmax; ++j) gj[j + 1] = gj[j] * (a + j) / (j + 1);

  double f_next = 0.0;  // f_{m+1}
  double f = 1e-300;    // f_m
  double norm = 0.0;
  double f1 = 0.0;
  for (int m = n; m >= 1; --m) {
    if (m % 2 == 0) norm += (a + m) * gj[m / 2] * f;
    double f_prev = 2.0 * (a + m) / x * f - f_next;
    f_next = f;
    f = f_prev;
    if (m == 1) f1 = f_next;
    if (std::fabs(f) > 1e250) {
      f *= 1e-250;
      f_next *= 1e-250;
      norm *= 1e-250;
      f1 *= 1e-250;
    }
  }
  norm += f;
  double scale = std::exp(a * std::log(0.5 * x) - log_gamma(a + 1.0)) / norm;
  return {f * scale, f1 * scale};
}

BesselPair bessel_hankel(double a, double x) { return {hankel_one(a, x), hankel_one(a + 1.0, x)}; }

}  // namespace detail

BesselPair bessel_j_pair(double a, double x) {
  if (!(a > -1.0) || !std::isfinite(a)) {
    throw DomainError("bessel_j: order " + std::to_string(a) + " must exceed -1");
  }
  if (!(x >= 0.0 && x <= bessel_x_max)) {
    throw DomainError("bessel_j: argument " + std::to_string(x) + " outside [0, 1e4]");
  }
  double aa = std::fabs(a) + 1.0;
  if (x <= 4.0 || 0.25 * x * x <= a + 1.0) return detail::bessel_series(a, x);
  if (x > 30.0 && x > 2.0 * aa * aa) return detail::bessel_hankel(a, x);
  return detail::bessel_miller(a, x);
}

double bessel_j(double a, double x) { return bessel_j_pair(a, x).j; }

double bessel_j_prime(double a, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_j_prime: x must be positive");
  BesselPair p = bessel_j_pair(a, x);
  return a / x * p.j - p.j_next;
}

}  // namespace gapspec::specfun
