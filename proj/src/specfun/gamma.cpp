#include <array>
#include <cmath>
#include <string>

#include "gapspec/errors.hpp"
#include "gapspec/specfun.hpp"

namespace gapspec::specfun {

namespace {

using cplx = std::complex<double>;

constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kLog2Pi = 1.8378770664093454836;

// B_2 .. B_26
constexpr std::array<double, 13> kBernoulli = {
    1.0 / 6.0,          -1.0 / 30.0,         1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0,     7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0,   854513.0 / 138.0, -236364091.0 / 2730.0,
    8553103.0 / 6.0};

constexpr int kZetaMax = 80;

// zeta(k), k = 2..kZetaMax, by Euler-Maclaurin with N = 10.
struct ZetaTable {
  std::array<double, kZetaMax + 1> z{};
  ZetaTable() {
    const int n = 10;
    for (int s = 2; s <= kZetaMax; ++s) {
      double sum = 0.0;
      for (int j = n - 1; j >= 1; --j) sum += std::pow(j, -s);
      double tail = std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s);
      // B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
      double rising = s;  // s(s+1)...(s+2j-2) for j = 1
      double fact = 2.0;  // (2j)!
      for (int j = 1; j <= 12; ++j) {
        double term = kBernoulli[j - 1] / fact * rising * std::pow(n, -s - 2.0 * j + 1.0);
        tail += term;
        if (std::fabs(term) < 1e-20 * sum) break;
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
      }
      z[s] = sum + tail;
    }
  }
};

const ZetaTable& zeta_table() {
  static const ZetaTable t;
  return t;
}

// log Gamma(1+z) = -gamma z + sum_{k>=2} (-1)^k zeta(k) z^k / k, |z| <= 1/2.
template <class T>
T log_gamma1_series(T z) {
  const auto& zt = zeta_table().z;
  T pw = -z;
  T sum = -euler_gamma * z;
  for (int k = 2; k <= kZetaMax; ++k) {
    pw *= -z;
    T term = zt[k] * pw / double(k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) || std::abs(term) < 1e-300) break;
  }
  return sum;
}

template <class T>
T stirling_series(T z) {
  // (z-1/2) log z - z + log(2 pi)/2 + sum B_2k / (2k(2k-1) z^{2k-1})
  T inv = 1.0 / z;
  T inv2 = inv * inv;
  T pw = inv;
  T sum = (z - 0.5) * std::log(z) - z + kHalfLog2Pi;
  for (int k = 1; k <= 10; ++k) {
    T term = kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    pw *= inv2;
  }
  return sum;
}

}  // namespace

double riemann_zeta(int k) {
  if (k < 2) throw DomainError("riemann_zeta: k must be >= 2");
  if (k > kZetaMax) return 1.0 + std::pow(2.0, -k) + std::pow(3.0, -k);
  return zeta_table().z[k];
}

namespace detail {

double log_gamma_stirling(double x) { return stirling_series(x); }

cplx log_barnes_g1_taylor(cplx w) {
  // log G(1+w) = w log(2pi)/2 - (w + (1+gamma) w^2)/2 + sum_{k>=2} (-1)^k zeta(k) w^{k+1}/(k+1)
  const auto& zt = zeta_table().z;
  cplx sum = 0.5 * kLog2Pi * w - 0.5 * (w + (1.0 + euler_gamma) * w * w);
  cplx pw = -w * w;
  for (int k = 2; k <= kZetaMax; ++k) {
    pw *= -w;
    cplx term = zt[k] * pw / double(k + 1);
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

cplx log_barnes_g1_asymptotic(cplx w) {
  // log G(1+w) = log G(1+w+N) - sum_{j<N} log Gamma(1+w+j)
  cplx shift = 0.0;
  while (std::abs(w) < 20.0) {
    shift -= log_gamma(1.0 + w);
    w += 1.0;
  }
  cplx lw = std::log(w);
  cplx w2 = w * w;
  cplx sum = 0.5 * w2 * lw - 0.75 * w2 + 0.5 * kLog2Pi * w - lw / 12.0 + zeta_prime_minus_one();
  cplx inv2 = 1.0 / w2;
  cplx pw = inv2;
  for (int k = 1; k <= 11; ++k) {
    cplx term = kBernoulli[k] / (4.0 * k * (k + 1.0)) * pw;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    pw *= inv2;
  }
  return sum + shift;
}

}  // namespace detail

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  if (std::isinf(x)) return x;
  if (x < 0.5) return log_gamma1_series(x) - std::log(x);
  if (x <= 1.5) return log_gamma1_series(x - 1.0);
  if (x <= 2.5) return log_gamma1_series(x - 2.0) + std::log1p(x - 2.0);
  if (x >= 15.0) return stirling_series(x);
  double shift = 0.0;
  while (x < 15.0) {
    shift += std::log(x);
    x += 1.0;
  }
  return stirling_series(x) - shift;
}

cplx log_gamma(cplx z) {
  if (!(z.real() > 0.0)) throw DomainError("log_gamma: complex argument needs Re z > 0");
  if (z.imag() == 0.0) return log_gamma(z.real());
  cplx shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling_series(z) - shift;
}

cplx log_barnes_g(cplx z) {
  if (!(z.real() > 0.0)) throw DomainError("log_barnes_g: needs Re z > 0");
  // Move Re z into (0.5, 1.5] with G(z+1) = Gamma(z) G(z).
  cplx acc = 0.0;
  while (z.real() > 1.5) {
    z -= 1.0;
    acc += log_gamma(z);
  }
  if (z.real() <= 0.5) {
    acc -= log_gamma(z);
    z += 1.0;
  }
  cplx w = z - 1.0;
  if (std::abs(w) <= 0.5) return acc + detail::log_barnes_g1_taylor(w);
  return acc + detail::log_barnes_g1_asymptotic(w);
}

double zeta_prime_minus_one() {
  // zeta'(-1) = 1/12 - log A, log A = (gamma + log 2pi)/12 - zeta'(2)/(2 pi^2).
  // zeta'(2) = -sum log(n)/n^2 by Euler-Maclaurin; f^{(m)}(x) = x^{-2-m}(a_m log x + b_m).
  static const double value = [] {
    const int n = 20;
    double sum = 0.0;
    for (int j = n - 1; j >= 2; --j) sum += std::log(double(j)) / (double(j) * j);
    double ln = std::log(double(n));
    double tail = (ln + 1.0) / n + 0.5 * ln / (double(n) * n);
    double am = 1.0, bm = 0.0;
    double fact = 1.0;
    for (int m = 0; m < 24; ++m) {
      double a_next = -(m + 2.0) * am;
      double b_next = -(m + 2.0) * bm + am;
      am = a_next;
      bm = b_next;
      fact *= (m + 1.0);
      int order = m + 1;
      if (order % 2 == 1) {
        int j = (order + 1) / 2;
        double deriv = std::pow(double(n), -2.0 - order) * (am * ln + bm);
        tail -= kBernoulli[j - 1] / (fact * (order + 1.0)) * deriv;
        if (j == 12) break;
      }
    }
    double zeta2p = -(sum + tail);
    double log_a = (euler_gamma + kLog2Pi) / 12.0 - zeta2p / (2.0 * pi * pi);
    return 1.0 / 12.0 - log_a;
  }();
  return value;
}

}  // namespace gapspec::specfun
