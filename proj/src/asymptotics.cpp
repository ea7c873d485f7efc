#include "gapspec/asymptotics.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "gapspec/errors.hpp"
#include "gapspec/specfun.hpp"

namespace gapspec::asymp {

namespace sf = specfun;

namespace {

const double kLn2 = std::log(2.0);
const double kLnPi = std::log(sf::pi);
const double kAiryRate = 2.0 * std::sqrt(2.0) / 3.0;

double log_factorial(int i) { return sf::log_gamma(i + 1.0); }

void check_index(int i) {
  if (i < 0) throw ArgumentError("eigenvalue index must be >= 0");
}

void check_order(double a) {
  if (!(a > -1.0) || !std::isfinite(a)) throw DomainError("Bessel order must satisfy a > -1");
}

double airy_t(double s) {
  if (!(s < 0.0)) throw ArgumentError("Airy expansions need s < 0");
  return std::pow(-s, 1.5);
}

double bessel_t(double s) {
  if (!(s > 0.0)) throw ArgumentError("Bessel expansions need s > 0");
  return std::sqrt(s);
}

// log(1 + e^x) without overflow.
double log1p_exp(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

void push_factor(TransitionExpansion& e, double log_excess) {
  e.log_excess.push_back(log_excess);
  e.factors.push_back(1.0 + std::exp(log_excess));
}

// log of iγ_k^{-1} magnitude h_k / (2 pi).
double log_h(Family family, int k, double a) {
  if (family == Family::Airy) return log_factorial(k) + 0.5 * kLnPi - k * kLn2;
  return log_factorial(k) + sf::log_gamma(1.0 + k + a);
}

// sigma from log t^alpha (Airy) or log t^{2 alpha} (Bessel), which may be +-inf.
double sigma_from_log(Family family, bool plus, int k, double log_ta, double t, double a) {
  double lt = std::log(t);
  const double l2pi = std::log(2.0 * sf::pi);
  double lnum, lden;  // log of numerator and denominator magnitudes (without the leading signs)
  if (plus) {
    double lc = log_h(family, k, a) - l2pi;
    if (family == Family::Airy) {
      lden = lc + (-2.5 * k - 1.25) * kLn2 + log_ta - 0.5 * lt;
      lnum = lden;
    } else {
      double base = lc + log_ta - lt;
      lnum = base + (-4.0 * k - 2.0 * a - 1.0) * kLn2;
      lden = base + (-4.0 * k - 2.0 * a - 2.0) * kLn2;
    }
  } else {
    if (k == 0) return 0.0;  // no (k-1)-th factor below the first curve
    double lc = l2pi - log_h(family, k - 1, a);
    if (family == Family::Airy) {
      lden = lc + (2.5 * k - 1.25) * kLn2 - log_ta - 0.5 * lt;
      lnum = lden;
    } else {
      double base = lc - log_ta - lt;
      lnum = base + (4.0 * k + 2.0 * a - 1.0) * kLn2;
      lden = base + (4.0 * k + 2.0 * a - 2.0) * kLn2;
    }
  }
  if (std::isnan(lnum)) throw NumericalError("sigma: undefined exponent");
  if (lnum == -std::numeric_limits<double>::infinity()) return 0.0;
  // x / (1 + y) with x = e^lnum, y = e^lden, evaluated as e^{lnum - lden} y / (1 + y).
  double frac = lden > 0.0 ? 1.0 / (1.0 + std::exp(-lden)) : std::exp(lden) / (1.0 + std::exp(lden));
  double mag = std::exp(lnum - lden) * frac;
  // The Bessel plus branch and the Airy minus branch carry a sign; denominators are 1 + positive.
  if (family == Family::Bessel) return -mag;
  return mag;
}

Branch resolve(Branch b, double alpha) {
  if (b != Branch::Auto) return b;
  return alpha >= 0.0 ? Branch::Plus : Branch::Minus;
}

}  // namespace

ChiSplit chi_decompose(double chi) {
  if (!std::isfinite(chi)) throw ArgumentError("chi must be finite");
  if (chi < -0.5) throw ArgumentError("chi_decompose needs chi >= -1/2");
  int k = static_cast<int>(std::floor(chi + 0.5));
  if (k < 0) k = 0;
  return {k, chi - k};
}

int p_of_chi(double chi, Family family) {
  if (family == Family::Sine) {
    if (chi < 0.5) return 1;
  } else if (chi < -0.5) {
    return 0;
  }
  // unique integer in (chi + 1/2, chi + 3/2]; chi + 1/2 is exact where chi + 3/2 may round up
  return static_cast<int>(std::floor(chi + 0.5)) + 1;
}

double stokes_v(Family family, double t, double chi, double a) {
  if (!(t > 1.0)) throw ArgumentError("stokes_v needs t > 1");
  double lt = std::log(t);
  switch (family) {
    case Family::Sine: return 2.0 * t - chi * lt;
    case Family::Airy: return kAiryRate * t - chi * lt;
    case Family::Bessel: return 2.0 * t - 2.0 * (chi + 0.5 * a) * lt;
  }
  return 0.0;
}

double chi_from_v(Family family, double t, double v, double a) {
  if (!(t > 1.0)) throw ArgumentError("chi_from_v needs t > 1");
  double lt = std::log(t);
  switch (family) {
    case Family::Sine: return (2.0 * t - v) / lt;
    case Family::Airy: return (kAiryRate * t - v) / lt;
    case Family::Bessel: return (2.0 * t - v) / (2.0 * lt) - 0.5 * a;
  }
  return 0.0;
}

StokesPoint StokesPoint::on_curve(Family family, double t, double chi, double a) {
  ChiSplit c = chi_decompose(chi);
  return {family, t, stokes_v(family, t, chi, a), chi, c.k, c.alpha, a};
}

double TransitionExpansion::log_value() const {
  double v = log_prefactor;
  for (double le : log_excess) v += log1p_exp(le);
  return v;
}

double log_sine_eig(int i, double s) {
  check_index(i);
  if (!(s > 0.0)) throw ArgumentError("sine_eig needs s > 0");
  return 0.5 * kLnPi - log_factorial(i) + (3.0 * i + 2.0) * kLn2 + (i + 0.5) * std::log(s) - 2.0 * s;
}

double log_airy_eig(int i, double s) {
  check_index(i);
  double t = airy_t(s);
  return 0.5 * kLnPi - log_factorial(i) + (3.5 * i + 2.25) * kLn2 + (i + 0.5) * std::log(t) - kAiryRate * t;
}

double log_bessel_eig(int i, double s, double a) {
  check_index(i);
  check_order(a);
  double t = bessel_t(s);
  return kLnPi - log_factorial(i) + (4.0 * i + 2.0 * a + 3.0) * kLn2 - sf::log_gamma(1.0 + a + i) +
         (2.0 * i + 1.0 + a) * std::log(t) - 2.0 * t;
}

double sine_eig(int i, double s) { return std::exp(log_sine_eig(i, s)); }
double airy_eig(int i, double s) { return std::exp(log_airy_eig(i, s)); }
double bessel_eig(int i, double s, double a) { return std::exp(log_bessel_eig(i, s, a)); }

double d_coeff(int i, double a) {
  check_index(i);
  check_order(a);
  return std::exp(log_factorial(i) + sf::log_gamma(1.0 + a + i) - kLnPi - (4.0 * i + 2.0 * a + 3.0) * kLn2);
}

double airy_gap_constant() { return std::exp(kLn2 / 24.0 + sf::zeta_prime_minus_one()); }
double sine_gap_constant() { return std::exp(kLn2 / 12.0 + 3.0 * sf::zeta_prime_minus_one()); }

double log_tau(double a) {
  check_order(a);
  if (a == 0.0) return 0.0;
  return sf::log_barnes_g({1.0 + a, 0.0}).real() - 0.5 * a * std::log(2.0 * sf::pi);
}

double airy_gap(double s) {
  if (!(s < 0.0)) throw ArgumentError("airy_gap needs s < 0");
  return s * s * s / 12.0 - 0.125 * std::log(-s) + kLn2 / 24.0 + sf::zeta_prime_minus_one();
}

double bessel_gap(double s, double a) {
  check_order(a);
  if (!(s > 0.0)) throw ArgumentError("bessel_gap needs s > 0");
  return -0.25 * s + a * std::sqrt(s) - 0.25 * a * a * std::log(s) + log_tau(a);
}

double sine_det_crit(double s) {
  if (!(s > 0.0)) throw ArgumentError("sine_det_crit needs s > 0");
  return -0.5 * s * s - 0.25 * std::log(s) + kLn2 / 12.0 + 3.0 * sf::zeta_prime_minus_one();
}

double sine_det_sub(double s, double v) {
  if (!(s > 0.0)) throw ArgumentError("sine_det_sub needs s > 0");
  if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("sine_det_sub needs finite v >= 0");
  if (v == 0.0) return 0.0;
  double g = sf::log_barnes_g({1.0, v / (2.0 * sf::pi)}).real();
  return -2.0 * v / sf::pi * s + v * v / (2.0 * sf::pi * sf::pi) * std::log(4.0 * s) + 4.0 * g;
}

TransitionExpansion sine_transition(double s, double v, int p, std::optional<double> chi) {
  if (p < 1) throw ArgumentError("sine transition needs p >= 1");
  if (!(v > 0.0)) throw ArgumentError("transition needs v > 0");
  TransitionExpansion e;
  e.p = p;
  e.log_prefactor = sine_det_crit(s);
  double ls = std::log(s);
  for (int i = 0; i < p; ++i) {
    push_factor(e, log_factorial(i) - 0.5 * kLnPi - (3.0 * i + 2.0) * kLn2 - (i + 0.5) * ls + 2.0 * s - v);
  }
  if (chi) e.error_exponent = std::fmin(p - *chi - 0.5, 1.0);
  return e;
}

TransitionExpansion airy_transition(double s, double v, int p, std::optional<double> chi) {
  if (p < 0) throw ArgumentError("transition needs p >= 0");
  if (!(v > 0.0)) throw ArgumentError("transition needs v > 0");
  double t = airy_t(s);
  TransitionExpansion e;
  e.p = p;
  e.log_prefactor = airy_gap(s);
  double lt = std::log(t);
  for (int i = 0; i < p; ++i) {
    push_factor(e, log_factorial(i) - 0.5 * kLnPi - (3.5 * i + 2.25) * kLn2 - (i + 0.5) * lt + kAiryRate * t - v);
  }
  if (chi) e.error_exponent = std::fmin(p - *chi - 0.5, 0.5);
  return e;
}

TransitionExpansion bessel_transition(double s, double v, double a, int p, std::optional<double> chi) {
  check_order(a);
  if (p < 0) throw ArgumentError("transition needs p >= 0");
  if (!(v > 0.0)) throw ArgumentError("transition needs v > 0");
  double t = bessel_t(s);
  TransitionExpansion e;
  e.p = p;
  e.log_prefactor = bessel_gap(s, a);
  double lt = std::log(t);
  for (int i = 0; i < p; ++i) {
    double ld = log_factorial(i) + sf::log_gamma(1.0 + a + i) - kLnPi - (4.0 * i + 2.0 * a + 3.0) * kLn2;
    push_factor(e, ld - (2.0 * i + 1.0 + a) * lt + 2.0 * t - v);
  }
  // The bound is max(t^{-2(p-chi-1/2)}, ln t / t); the log is not part of the exponent.
  if (chi) e.error_exponent = std::fmin(2.0 * (p - *chi - 0.5), 1.0);
  return e;
}

double s_of_t(Family family, double t) {
  if (!(t > 0.0)) throw ArgumentError("t must be positive");
  switch (family) {
    case Family::Sine: return t;
    case Family::Airy: return -std::pow(t, 2.0 / 3.0);
    case Family::Bessel: return t * t;
  }
  return 0.0;
}

TransitionExpansion transition(Family family, double t, double v, double chi, double a) {
  int p = p_of_chi(chi, family);
  double s = s_of_t(family, t);
  switch (family) {
    case Family::Sine: return sine_transition(s, v, p, chi);
    case Family::Airy: return airy_transition(s, v, p, chi);
    case Family::Bessel: return bessel_transition(s, v, a, p, chi);
  }
  return {};
}

TransitionExpansion transition_on_curve(const StokesPoint& pt) { return transition(pt.family, pt.t, pt.v, pt.chi, pt.a); }

double sigma_pm(Family family, Branch branch, int k, double alpha, double t, double a) {
  if (family == Family::Sine) throw ArgumentError("sigma_pm is defined for Airy and Bessel only");
  if (k < 0) throw ArgumentError("sigma_pm needs k >= 0");
  if (!(t > 0.0)) throw ArgumentError("sigma_pm needs t > 0");
  if (family == Family::Bessel) check_order(a);
  bool plus = resolve(branch, alpha) == Branch::Plus;
  double lt = std::log(t);
  double log_ta = family == Family::Airy ? alpha * lt : 2.0 * alpha * lt;
  return sigma_from_log(family, plus, k, log_ta, t, a);
}

double airy_logderiv_asymp(double s, double v, double chi, Branch branch) {
  double t = airy_t(s);
  ChiSplit c = chi_decompose(chi);
  bool plus = resolve(branch, c.alpha) == Branch::Plus;
  if (!(v > 0.0)) throw ArgumentError("logderiv needs v > 0");
  double log_ta = kAiryRate * t - v - c.k * std::log(t);  // -inf when v = inf
  double sigma = sigma_from_log(Family::Airy, plus, c.k, log_ta, t, 0.0);
  double k = c.k;
  double r = std::sqrt(2.0 * std::fabs(s));
  double pm = plus ? 1.0 : -1.0;
  return s * s / 4.0 - 1.0 / (8.0 * s) - pm * r * sigma - r * k - 2.0 * k * k / s + 7.0 * k / (12.0 * s) * (k + pm);
}

double bessel_logderiv_asymp(double s, double v, double chi, double a, Branch branch) {
  check_order(a);
  double t = bessel_t(s);
  ChiSplit c = chi_decompose(chi);
  bool plus = resolve(branch, c.alpha) == Branch::Plus;
  if (!(v > 0.0)) throw ArgumentError("logderiv needs v > 0");
  double log_t2a = 2.0 * t - v - (a + 2.0 * c.k) * std::log(t);
  double sigma = sigma_from_log(Family::Bessel, plus, c.k, log_t2a, t, a);
  double k = c.k;
  double pm = plus ? 1.0 : -1.0;
  return -0.25 + a / (2.0 * t) - a * a / (4.0 * s) - pm * sigma / (2.0 * t) + k / t - k * (k + a) / (2.0 * s);
}

}  // namespace gapspec::asymp
