#pragma once

#include <optional>
#include <string>

namespace gapspec {

enum class Family { Sine, Airy, Bessel };

std::string family_name(Family f);
/// Accepts "sine", "airy", "bessel" (case-insensitive).
Family parse_family(const std::string& name);

struct KernelSpec {
  Family family = Family::Sine;
  double a = 0.0;  // Bessel order, a > -1

  static KernelSpec sine() { return {Family::Sine, 0.0}; }
  static KernelSpec airy() { return {Family::Airy, 0.0}; }
  static KernelSpec bessel(double a);
};

/// Natural interval of a kernel, parameterised by one endpoint s:
/// Sine (-s, s), Airy (s, inf), Bessel (0, s).
class IntervalSpec {
 public:
  IntervalSpec(Family family, double s);

  Family family() const { return family_; }
  double s() const { return s_; }
  double lo() const;
  double hi() const;  // +inf for Airy
  double length() const { return hi() - lo(); }
  /// Scaling variable: (-s)^{3/2} for Airy with s < 0, sqrt(s) for Bessel, s for Sine.
  std::optional<double> t() const;

 private:
  Family family_;
  double s_;
};

/// phi, psi of the integrable form K = (phi(x) psi(y) - psi(x) phi(y)) / (x - y).
/// Sine: (sin x / pi, cos x); Airy: (Ai, Ai'); Bessel: (sqrt(x) J_{a+1}(sqrt x), J_a(sqrt x) / 2).
struct IiksPair {
  double phi;
  double psi;
};

IiksPair iiks_pair(const KernelSpec& spec, double x);

/// Switch distance below which kernel_eval uses the midpoint Taylor branch.
double near_diagonal_switch(const KernelSpec& spec, double lambda, double mu);

double kernel_eval(const KernelSpec& spec, double lambda, double mu);
double kernel_diag(const KernelSpec& spec, double lambda);

/// Same value as kernel_eval when both IIKS pairs are already known; used by assembly.
double kernel_eval_cached(const KernelSpec& spec, double lambda, const IiksPair& pl, double mu,
                          const IiksPair& pm);

namespace detail {
/// Exact difference quotient on the sorted pair, no switch.
double kernel_quotient(const KernelSpec& spec, double lambda, double mu);
/// Midpoint Taylor expansion (three odd terms), no switch.
double kernel_taylor(const KernelSpec& spec, double lambda, double mu);
}  // namespace detail

/// Gauss-Legendre value of int_0^upper Ai(lambda+t) Ai(mu+t) dt, n >= 40.
double airy_convolution(double lambda, double mu, double upper, int n);
/// Smallest upper limit (on a 0.5 grid) with Ai(lambda+upper) Ai(mu+upper) < 1e-18.
double airy_convolution_upper(double lambda, double mu);

}  // namespace gapspec
