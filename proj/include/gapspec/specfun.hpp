#pragma once

#include <complex>

namespace gapspec::specfun {

/// Argument interval on which one evaluation branch is certified.
struct EvalRange {
  double lo;
  double hi;
  constexpr bool contains(double x) const { return lo <= x && x <= hi; }
};

struct AiryPair {
  double ai;
  double aip;
};

/// J_a(x) together with J_{a+1}(x); the kernels always need both.
struct BesselPair {
  double j;
  double j_next;
};

// Operating range of the Airy implementation.
inline constexpr EvalRange airy_domain{-40.0, 200.0};
inline constexpr double bessel_x_max = 1e4;

// Certified ranges of the individual branches. Adjacent branches overlap so the
// tests can compare them; dispatch switches at the midpoint of each overlap.
namespace ranges {
inline constexpr EvalRange airy_maclaurin{-2.2, 2.2};
inline constexpr EvalRange airy_integral{1.8, 8.8};
inline constexpr EvalRange airy_asymptotic_pos{7.2, 200.0};
inline constexpr EvalRange airy_bessel_neg{-8.8, -1.8};
inline constexpr EvalRange airy_asymptotic_neg{-40.0, -7.2};
// Bessel ranges are for |a| <= 3; larger orders move the switch points outward.
inline constexpr EvalRange bessel_series{0.0, 4.4};
inline constexpr EvalRange bessel_miller{3.6, 33.0};
inline constexpr EvalRange bessel_hankel{27.0, 1e4};
}  // namespace ranges

AiryPair airy(double x);
double airy_ai(double x);
double airy_ai_prime(double x);

/// Requires a > -1 and 0 <= x <= 1e4. J_a(0) for -1 < a < 0 is infinite and rejected.
BesselPair bessel_j_pair(double a, double x);
double bessel_j(double a, double x);
/// J_a'(x) = (a/x) J_a(x) - J_{a+1}(x); x > 0.
double bessel_j_prime(double a, double x);

double log_gamma(double x);
/// Analytic continuation of log Gamma from the positive axis; Re z > 0.
std::complex<double> log_gamma(std::complex<double> z);
/// Analytic continuation of log G from the positive axis; Re z > 0.
std::complex<double> log_barnes_g(std::complex<double> z);

/// zeta(k) for integer k >= 2.
double riemann_zeta(int k);
double zeta_prime_minus_one();

inline constexpr double euler_gamma = 0.57721566490153286060651209;
inline constexpr double pi = 3.14159265358979323846264338;

// Individual branches, exposed for overlap tests. No range checks.
namespace detail {
AiryPair airy_maclaurin(double x);
AiryPair airy_integral(double x);
AiryPair airy_asymptotic_pos(double x);
AiryPair airy_bessel_neg(double x);
AiryPair airy_asymptotic_neg(double x);

BesselPair bessel_series(double a, double x);
BesselPair bessel_miller(double a, double x);
BesselPair bessel_hankel(double a, double x);

double log_gamma_stirling(double x);
/// log G(1+w) by Taylor series, |w| <= 0.5.
std::complex<double> log_barnes_g1_taylor(std::complex<double> w);
/// log G(1+w) by the large-|w| expansion with upward shifts.
std::complex<double> log_barnes_g1_asymptotic(std::complex<double> w);
}  // namespace detail

}  // namespace gapspec::specfun
