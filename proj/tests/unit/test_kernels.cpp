#include <doctest.h>

#include <cmath>
#include <random>

#include "gapspec/errors.hpp"
#include "gapspec/kernels.hpp"
#include "gapspec/linalg.hpp"
#include "gapspec/operator.hpp"
#include "gapspec/specfun.hpp"

using namespace gapspec;
namespace sf = gapspec::specfun;

TEST_CASE("kernel specs and intervals") {
  CHECK_THROWS_AS(KernelSpec::bessel(-1.0), DomainError);
  CHECK_NOTHROW(KernelSpec::bessel(-0.5));
  CHECK_THROWS_AS(IntervalSpec(Family::Sine, 0.0), ArgumentError);
  CHECK_THROWS_AS(IntervalSpec(Family::Bessel, -1.0), ArgumentError);
  CHECK_NOTHROW(IntervalSpec(Family::Airy, -3.0));

  IntervalSpec ai(Family::Airy, -4.0);
  CHECK(ai.lo() == -4.0);
  CHECK(std::isinf(ai.hi()));
  CHECK(*ai.t() == doctest::Approx(8.0));
  CHECK_FALSE(IntervalSpec(Family::Airy, 1.0).t().has_value());
  IntervalSpec be(Family::Bessel, 64.0);
  CHECK(be.lo() == 0.0);
  CHECK(*be.t() == 8.0);
  IntervalSpec si(Family::Sine, 3.0);
  CHECK(si.lo() == -3.0);
  CHECK(si.length() == 6.0);

  CHECK(parse_family("Airy") == Family::Airy);
  CHECK(parse_family("bessel") == Family::Bessel);
  CHECK_THROWS_AS(parse_family("hermite"), ArgumentError);
}

TEST_CASE("diagonal limits") {
  CHECK(kernel_eval(KernelSpec::sine(), 0.7, 0.7) == doctest::Approx(1.0 / sf::pi).epsilon(1e-15));
  CHECK(kernel_diag(KernelSpec::sine(), -12.0) == doctest::Approx(1.0 / sf::pi).epsilon(1e-15));

  double ap0 = sf::airy_ai_prime(0.0);
  CHECK(kernel_diag(KernelSpec::airy(), 0.0) == doctest::Approx(ap0 * ap0).epsilon(1e-15));
  for (double x : {-3.0, 0.5, 2.0}) {
    sf::AiryPair p = sf::airy(x);
    CHECK(kernel_eval(KernelSpec::airy(), x, x) == doctest::Approx(p.aip * p.aip - x * p.ai * p.ai).epsilon(1e-14));
  }

  CHECK(kernel_diag(KernelSpec::bessel(0.0), 0.0) == 0.25);
  CHECK(kernel_diag(KernelSpec::bessel(0.0), 1e-12) == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(kernel_diag(KernelSpec::bessel(1.0), 0.0) == 0.0);
  CHECK_THROWS_AS(kernel_diag(KernelSpec::bessel(-0.5), 0.0), DomainError);
  for (double a : {-0.5, 0.0, 1.0, 2.5}) {
    for (double x : {0.3, 2.0, 9.0, 50.0}) {
      double r = std::sqrt(x);
      double jm;  // J_{a-1}(r), independent of the library's recurrence where possible
      if (a == 0.0) jm = -sf::bessel_j(1.0, r);
      else if (a == -0.5) jm = std::sqrt(2.0 / (sf::pi * r)) * (-std::cos(r) / r - std::sin(r));
      else jm = sf::bessel_j(a - 1.0, r);
      double want = 0.25 * (std::pow(sf::bessel_j(a, r), 2) - sf::bessel_j(a + 1, r) * jm);
      KernelSpec k = KernelSpec::bessel(a);
      CAPTURE(a);
      CAPTURE(x);
      CHECK(kernel_diag(k, x) == doctest::Approx(want).epsilon(1e-12));
      // the quotient at |lambda-mu| = 1e-5 approaches the diagonal
      CHECK(std::fabs(detail::kernel_quotient(k, x, x + 1e-5) - kernel_diag(k, x)) < 1e-5);
    }
  }
}

TEST_CASE("symmetry is exact") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  KernelSpec specs[] = {KernelSpec::sine(), KernelSpec::airy(), KernelSpec::bessel(0.0), KernelSpec::bessel(-0.5),
                        KernelSpec::bessel(1.0)};
  for (const auto& k : specs) {
    for (int i = 0; i < 200; ++i) {
      double x, y;
      if (k.family == Family::Bessel) {
        x = 30.0 * u(rng);
        y = i % 3 ? 30.0 * u(rng) : x * (1.0 + 1e-5 * u(rng));
      } else {
        x = -8.0 + 16.0 * u(rng);
        y = i % 3 ? -8.0 + 16.0 * u(rng) : x + 1e-4 * u(rng);
      }
      CHECK(kernel_eval(k, x, y) == kernel_eval(k, y, x));
    }
  }
}

TEST_CASE("continuity across the near-diagonal switch") {
  KernelSpec specs[] = {KernelSpec::sine(), KernelSpec::airy(), KernelSpec::bessel(0.0), KernelSpec::bessel(-0.5),
                        KernelSpec::bessel(1.0)};
  for (const auto& k : specs) {
    for (int i = 0; i < 50; ++i) {
      double base;
      if (k.family == Family::Bessel) base = 0.01 + 100.0 * i / 49.0;
      else if (k.family == Family::Airy) base = -12.0 + 24.0 * i / 49.0;
      else base = -10.0 + 20.0 * i / 49.0;
      // solve d = c max(1, |2 base + d|) approximately; the switch is evaluated at the pair itself
      double d = near_diagonal_switch(k, base, base);
      double mu = base + d;
      d = near_diagonal_switch(k, base, mu);
      mu = base + d;
      double exact = detail::kernel_quotient(k, base, mu);
      double taylor = detail::kernel_taylor(k, base, mu);
      CAPTURE(family_name(k.family));
      CAPTURE(base);
      CHECK(std::fabs(exact - taylor) <= 1e-9);
      CHECK(std::fabs(exact - taylor) <= 1e-9 * std::fmax(1.0, std::fabs(exact)));
    }
  }
}

TEST_CASE("kernel domain errors") {
  CHECK_THROWS_AS(kernel_eval(KernelSpec::bessel(0.0), -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(kernel_eval(KernelSpec::airy(), -50.0, 1.0), DomainError);
  CHECK_THROWS_AS(kernel_diag(KernelSpec::sine(), std::nan("")), DomainError);
}

TEST_CASE("airy convolution representation") {
  double up = airy_convolution_upper(0.0, 0.0);
  CHECK(std::fabs(sf::airy_ai(up) * sf::airy_ai(up)) < 1e-18);
  CHECK(std::fabs(airy_convolution(0.0, 0.0, up, 80) - kernel_diag(KernelSpec::airy(), 0.0)) <= 1e-8);
  up = airy_convolution_upper(1.0, 2.0);
  CHECK(std::fabs(airy_convolution(1.0, 2.0, up, 80) - kernel_eval(KernelSpec::airy(), 1.0, 2.0)) <= 1e-8);
  CHECK(airy_convolution(1.0, 2.0, up, 80) == airy_convolution(2.0, 1.0, up, 80));
  for (double l : {-5.0, -2.5, 0.0, 2.5, 5.0}) {
    for (double m : {-5.0, -1.0, 3.0, 5.0}) {
      double upper = airy_convolution_upper(l, m);
      CHECK(std::fabs(airy_convolution(l, m, upper, 120) - kernel_eval(KernelSpec::airy(), l, m)) <= 1e-8);
    }
  }
  CHECK_THROWS_AS(airy_convolution(0.0, 0.0, 10.0, 39), ArgumentError);
}

TEST_CASE("10x10 Nystrom matrices have spectra in (0, 1)") {
  struct Case {
    KernelSpec k;
    double s;
  } cases[] = {{KernelSpec::sine(), 1.0}, {KernelSpec::airy(), -1.0}, {KernelSpec::bessel(0.0), 1.0}};
  for (const auto& c : cases) {
    Discretization d = build_discretization(c.k, IntervalSpec(c.k.family, c.s), 10);
    EigenResult r = jacobi_eigen(d.matrix, false);
    // trailing eigenvalues sit below rounding level; only those above it can be signed
    double noise = 1e-15 * d.matrix.frobenius();
    CHECK(r.values.front() > noise);
    for (double v : r.values) {
      CHECK(v > -noise);
      CHECK(v < 1.0);
    }
  }
}
