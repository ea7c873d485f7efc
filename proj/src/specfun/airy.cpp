#include <cmath>
#include <string>

#include "gapspec/errors.hpp"
#include "gapspec/specfun.hpp"

namespace gapspec::specfun {

namespace {

constexpr double kAi0 = 0.35502805388781723926;   // 3^{-2/3}/Gamma(2/3)
constexpr double kAip0 = 0.25881940379280679840;  // 3^{-1/3}/Gamma(1/3)
constexpr double kSqrtPi = 1.7724538509055160273;

// Coefficients u_k, v_k of the Airy asymptotic expansions (DLMF 9.7.2).
struct AsymptoticCoefficients {
  static constexpr int size = 60;
  double u[size];
  double v[size];
  AsymptoticCoefficients() {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k < size; ++k) {
      u[k] = u[k - 1] * (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
      v[k] = -(6.0 * k + 1) / (6.0 * k - 1) * u[k];
    }
  }
};

const AsymptoticCoefficients& coefficients() {
  static const AsymptoticCoefficients c;
  return c;
}

// Sums sum_k sign_k c[k] / zeta^k with terms taken in steps of `stride`
// starting at `first`, stopping at the smallest term.
double truncated_sum(const double* c, double zeta, int first, int stride, bool alternate) {
  double sum = 0.0;
  double prev = HUGE_VAL;
  double sign = 1.0;
  for (int k = first; k < AsymptoticCoefficients::size; k += stride) {
    double term = c[k] / std::pow(zeta, k);
    if (std::fabs(term) > prev) break;
    sum += sign * term;
    prev = std::fabs(term);
    if (prev < 1e-17 * std::fabs(sum)) break;
    if (alternate) sign = -sign;
  }
  return sum;
}

// e^z K_nu(z) by the trapezoid rule on int_0^inf exp(-2 z sinh^2(t/2)) cosh(nu t) dt.
double scaled_bessel_k(double nu, double z) {
  const double h = 0.1;
  double sum = 0.5;
  for (int k = 1; k < 2000; ++k) {
    double t = k * h;
    double sh = std::sinh(0.5 * t);
    double term = std::exp(-2.0 * z * sh * sh) * std::cosh(nu * t);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return h * sum;
}

}  // namespace

namespace detail {

AiryPair airy_maclaurin(double x) {
  // Ai = Ai(0) f(x) - |Ai'(0)| g(x), f and g the standard even/odd series.
  double x3 = x * x * x;
  double f = 1.0, g = x, fp = 0.0, gp = 1.0;
  double tf = 1.0, tg = x, tfp = x * x / 2.0, tgp = 1.0;
  fp = tfp;
  for (int k = 1; k < 200; ++k) {
    double kk = 3.0 * k;
    tf *= x3 / ((kk - 1) * kk);
    tg *= x3 / (kk * (kk + 1));
    if (k >= 2) tfp *= x3 / ((kk - 3) * (kk - 1));
    tgp *= x3 / ((kk - 2) * kk);
    f += tf;
    g += tg;
    if (k >= 2) fp += tfp;
    gp += tgp;
    double scale = std::fabs(f) + std::fabs(g) + std::fabs(fp) + std::fabs(gp);
    if (std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp) < 1e-18 * scale) break;
  }
  return {kAi0 * f - kAip0 * g, kAi0 * fp - kAip0 * gp};
}

AiryPair airy_integral(double x) {
  double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double e = std::exp(-zeta);
  double k13 = scaled_bessel_k(1.0 / 3.0, zeta);
  double k23 = scaled_bessel_k(2.0 / 3.0, zeta);
  return {std::sqrt(x / 3.0) / pi * e * k13, -x / (pi * std::sqrt(3.0)) * e * k23};
}

AiryPair airy_asymptotic_pos(double x) {
  const auto& c = coefficients();
  double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double e = std::exp(-zeta);
  double x14 = std::sqrt(std::sqrt(x));
  double su = truncated_sum(c.u, zeta, 0, 1, true);
  double sv = truncated_sum(c.v, zeta, 0, 1, true);
  return {e / (2.0 * kSqrtPi * x14) * su, -x14 * e / (2.0 * kSqrtPi) * sv};
}

AiryPair airy_bessel_neg(double x) {
  double z = -x;
  double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  BesselPair p13 = bessel_j_pair(1.0 / 3.0, zeta);
  BesselPair m23 = bessel_j_pair(-2.0 / 3.0, zeta);
  BesselPair m13 = bessel_j_pair(-1.0 / 3.0, zeta);
  // J_{2/3} is the j_next of order -1/3.
  double ai = std::sqrt(z) / 3.0 * (p13.j + m13.j);
  double aip = z / 3.0 * (m13.j_next - m23.j);
  return {ai, aip};
}

AiryPair airy_asymptotic_neg(double x) {
  const auto& c = coefficients();
  double z = -x;
  double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  double z14 = std::sqrt(std::sqrt(z));
  // cos/sin(zeta - pi/4) expanded so the large argument is reduced only once.
  double cz = std::cos(zeta), sz = std::sin(zeta);
  double r = std::sqrt(0.5);
  double cp = r * (cz + sz);
  double sp = r * (sz - cz);
  double ue = truncated_sum(c.u, zeta, 0, 2, true);
  double uo = truncated_sum(c.u, zeta, 1, 2, true);
  double ve = truncated_sum(c.v, zeta, 0, 2, true);
  double vo = truncated_sum(c.v, zeta, 1, 2, true);
  double ai = (cp * ue + sp * uo) / (kSqrtPi * z14);
  double aip = z14 / kSqrtPi * (sp * ve - cp * vo);
  return {ai, aip};
}

}  // namespace detail

AiryPair airy(double x) {
  if (!(x >= airy_domain.lo && x <= airy_domain.hi)) {
    throw DomainError("airy: argument " + std::to_string(x) + " outside [-40, 200]");
  }
  if (x < -8.0) return detail::airy_asymptotic_neg(x);
  if (x < -2.0) return detail::airy_bessel_neg(x);
  if (x <= 2.0) return detail::airy_maclaurin(x);
  if (x <= 8.0) return detail::airy_integral(x);
  return detail::airy_asymptotic_pos(x);
}

double airy_ai(double x) { return airy(x).ai; }
double airy_ai_prime(double x) { return airy(x).aip; }

}  // namespace gapspec::specfun
