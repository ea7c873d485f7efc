#pragma once

#include <optional>
#include <vector>

#include "gapspec/kernels.hpp"

namespace gapspec::asymp {

/// chi = k + alpha with k >= 0 and -1/2 <= alpha < 1/2.
struct ChiSplit {
  int k;
  double alpha;
};

ChiSplit chi_decompose(double chi);

/// Number of explicit eigenvalue factors in the transition product.
/// Airy/Bessel: 0 below chi = -1/2; Sine: at least 1.
int p_of_chi(double chi, Family family);

/// v on the Stokes curve through (t, chi); t > 1.
double stokes_v(Family family, double t, double chi, double a = 0.0);
/// Inverse of stokes_v in chi.
double chi_from_v(Family family, double t, double v, double a = 0.0);

struct StokesPoint {
  Family family;
  double t;
  double v;
  double chi;
  int k;
  double alpha;
  double a;

  double kappa() const { return v / t; }

  static StokesPoint on_curve(Family family, double t, double chi, double a = 0.0);
};

struct TransitionExpansion {
  double log_prefactor = 0.0;
  std::vector<double> factors;
  /// log(factor_i - 1), kept separately since factor_i - 1 cancels when factor_i is near 1.
  std::vector<double> log_excess;
  int p = 0;
  std::optional<double> error_exponent;

  /// log_prefactor + sum log(factor_i), without forming the factors.
  double log_value() const;
};

// Predicted 1 - lambda_i. The log variants avoid underflow of e^{-2s}.
double sine_eig(int i, double s);
double airy_eig(int i, double s);
double bessel_eig(int i, double s, double a);
double log_sine_eig(int i, double s);
double log_airy_eig(int i, double s);
double log_bessel_eig(int i, double s, double a);

/// i! Gamma(1+a+i) / pi * 2^{-4i-2a-3}.
double d_coeff(int i, double a);

/// exp(ln2/24 + zeta'(-1)).
double airy_gap_constant();
/// exp(ln2/12 + 3 zeta'(-1)).
double sine_gap_constant();
/// log G(1+a) - (a/2) log(2 pi).
double log_tau(double a);

/// log D(J; 1), leading terms plus constant.
double airy_gap(double s);
double bessel_gap(double s, double a);
double sine_det_crit(double s);
/// log D(J_sin; gamma) for fixed gamma = 1 - e^{-v} < 1.
double sine_det_sub(double s, double v);

TransitionExpansion sine_transition(double s, double v, int p, std::optional<double> chi = std::nullopt);
TransitionExpansion airy_transition(double s, double v, int p, std::optional<double> chi = std::nullopt);
TransitionExpansion bessel_transition(double s, double v, double a, int p,
                                      std::optional<double> chi = std::nullopt);
/// Dispatch on the family with p = p_of_chi(chi) at scaling variable t.
TransitionExpansion transition(Family family, double t, double v, double chi, double a = 0.0);
TransitionExpansion transition_on_curve(const StokesPoint& pt);

/// Interval endpoint s corresponding to t.
double s_of_t(Family family, double t);

enum class Branch { Auto, Plus, Minus };

/// Residue coefficient at the singular point of the model problem.
/// Branch::Auto picks Plus for alpha >= 0.
double sigma_pm(Family family, Branch branch, int k, double alpha, double t, double a = 0.0);

/// d/ds log D from the asymptotic expansion. k comes from chi; t^alpha is taken from v,
/// so v = inf (gamma = 1) switches sigma off.
double airy_logderiv_asymp(double s, double v, double chi, Branch branch = Branch::Auto);
double bessel_logderiv_asymp(double s, double v, double chi, double a, Branch branch = Branch::Auto);

}  // namespace gapspec::asymp
