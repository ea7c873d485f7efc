#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <random>

#include "gapspec/errors.hpp"
#include "gapspec/operator.hpp"
#include "gapspec/specfun.hpp"

using namespace gapspec;

TEST_CASE("gauss_legendre small rules") {
  Quadrature q1 = gauss_legendre(1);
  CHECK(q1.nodes[0] == 0.0);
  CHECK(q1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));
  Quadrature q2 = gauss_legendre(2);
  CHECK(q2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(q2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(q2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(gauss_legendre(0), ArgumentError);
  CHECK_THROWS_AS(gauss_legendre(2001), ArgumentError);
}

TEST_CASE("gauss_legendre exactness and invariants") {
  for (int n : {3, 4, 7, 20, 41, 100, 500, 2000}) {
    Quadrature q = gauss_legendre(n);
    double s4 = 0.0, sw = 0.0;
    for (int i = 0; i < n; ++i) {
      s4 += q.weights[i] * std::pow(q.nodes[i], 4);
      sw += q.weights[i];
      CHECK(q.weights[i] > 0.0);
      if (i) CHECK(q.nodes[i] > q.nodes[i - 1]);
    }
    CAPTURE(n);
    CHECK(std::fabs(s4 - 0.4) < 1e-13);
    CHECK(std::fabs(sw - 2.0) < 1e-12 * 2.0);
    CHECK(q.nodes.front() > -1.0);
    CHECK(q.nodes.back() < 1.0);
  }
  // degree 2n-1 exactness for n = 10
  Quadrature q = gauss_legendre(10);
  double s = 0.0;
  for (int i = 0; i < 10; ++i) s += q.weights[i] * std::pow(q.nodes[i], 18);
  CHECK(s == doctest::Approx(2.0 / 19.0).epsilon(1e-14));
}

TEST_CASE("kernel quadrature weights sum to interval length") {
  struct Case {
    KernelSpec k;
    double s;
  } cases[] = {{KernelSpec::sine(), 2.0}, {KernelSpec::airy(), -2.0}, {KernelSpec::bessel(0.0), 4.0},
               {KernelSpec::bessel(-0.5), 100.0}, {KernelSpec::airy(), 5.0}};
  for (const auto& c : cases) {
    IntervalSpec iv(c.k.family, c.s);
    Quadrature q = kernel_quadrature(c.k, iv, 37);
    double sw = std::accumulate(q.weights.begin(), q.weights.end(), 0.0);
    CHECK(std::fabs(sw - (q.hi - q.lo)) <= 1e-12 * (q.hi - q.lo));
    for (int i = 0; i < q.size(); ++i) {
      CHECK(q.nodes[i] > q.lo);
      CHECK(q.nodes[i] < q.hi);
      if (i) CHECK(q.nodes[i] > q.nodes[i - 1]);
    }
  }
  CHECK_THROWS_AS(kernel_quadrature(KernelSpec::sine(), IntervalSpec(Family::Airy, -1.0), 10), ArgumentError);
}

TEST_CASE("build_discretization") {
  Discretization d1 = build_discretization(KernelSpec::sine(), IntervalSpec(Family::Sine, 1.0), 1);
  CHECK(d1.matrix(0, 0) == doctest::Approx(2.0 / specfun::pi).epsilon(1e-15));

  Discretization da = build_discretization(KernelSpec::airy(), IntervalSpec(Family::Airy, -1.0), 40);
  CHECK(da.truncation == doctest::Approx(std::pow(33.75, 2.0 / 3.0)));
  CHECK(kernel_diag(KernelSpec::airy(), da.truncation) < 1e-18);
  CHECK(4.0 / 3.0 * std::pow(da.truncation, 1.5) >= 45.0 - 1e-12);
  CHECK(airy_truncation(-20.0) == doctest::Approx(std::pow(33.75, 2.0 / 3.0)));
  CHECK(airy_truncation(3.0) == 13.0);
  CHECK(da.matrix.max_asymmetry() == 0.0);

  CHECK_THROWS_AS(build_discretization(KernelSpec::bessel(0.0), IntervalSpec(Family::Sine, 1.0), 10),
                  ArgumentError);
}

TEST_CASE("parallel assembly equals the serial reference") {
  KernelSpec specs[] = {KernelSpec::sine(), KernelSpec::airy(), KernelSpec::bessel(0.0), KernelSpec::bessel(-0.5)};
  double svals[] = {3.0, -4.0, 36.0, 49.0};
  for (int c = 0; c < 4; ++c) {
    Quadrature q = kernel_quadrature(specs[c], IntervalSpec(specs[c].family, svals[c]), 60);
    Matrix a = assemble_matrix(specs[c], q, Exec::Parallel);
    Matrix b = assemble_matrix(specs[c], q, Exec::Serial);
    CHECK(a.data == b.data);
  }
}

TEST_CASE("jacobi small cases") {
  Matrix one(1);
  one(0, 0) = 0.3;
  CHECK(jacobi_eigen(one, false).values == std::vector<double>{0.3});
  Matrix dg(2);
  dg(0, 0) = 0.1;
  dg(1, 1) = 0.9;
  auto r = jacobi_eigen(dg, true);
  CHECK(r.values[0] == 0.9);
  CHECK(r.values[1] == 0.1);
  CHECK(std::fabs(r.vectors(1, 0)) == 1.0);
}

TEST_CASE("jacobi agrees with Eigen on random symmetric matrices") {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  for (int n : {5, 30, 80}) {
    Matrix a(n);
    Eigen::MatrixXd e(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double v = g(rng);
        a(i, j) = a(j, i) = v;
        e(i, j) = e(j, i) = v;
      }
    EigenResult r = jacobi_eigen(a, true);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e);
    Eigen::VectorXd ev = es.eigenvalues();  // ascending
    double scale = a.frobenius();
    for (int k = 0; k < n; ++k) CHECK(std::fabs(r.values[k] - ev(n - 1 - k)) <= 1e-13 * scale);
    // A v = lambda v
    for (int k = 0; k < n; ++k) {
      double res = 0.0;
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += a(i, j) * r.vectors(j, k);
        res = std::fmax(res, std::fabs(s - r.values[k] * r.vectors(i, k)));
      }
      CHECK(res <= 1e-12 * scale);
    }
  }
}

TEST_CASE("spectrum validation and clamping") {
  Spectrum sp = Spectrum::from_values({0.1, 0.9, -1e-12, 1.0 + 1e-12, 1e-310});
  CHECK(sp.eigenvalues.front() == kSpectrumCeiling);
  CHECK(sp.eigenvalues.back() == 0.0);
  CHECK(sp.clamped == 3);
  for (size_t i = 1; i < sp.eigenvalues.size(); ++i) CHECK(sp.eigenvalues[i] <= sp.eigenvalues[i - 1]);
  CHECK_THROWS_AS(Spectrum::from_values({0.5, -1e-6}), NumericalError);
  CHECK_THROWS_AS(Spectrum::from_values({1.001}), NumericalError);
}

TEST_CASE("compute_spectrum self-convergence and simplicity") {
  auto sp40 = compute_spectrum(build_discretization(KernelSpec::sine(), IntervalSpec(Family::Sine, 1.0), 40));
  auto sp80 = compute_spectrum(build_discretization(KernelSpec::sine(), IntervalSpec(Family::Sine, 1.0), 80));
  CHECK(std::fabs(sp40.eigenvalues[0] - sp80.eigenvalues[0]) <= 1e-12);

  struct Case {
    KernelSpec k;
    double s;
  } cases[] = {{KernelSpec::sine(), 2.0}, {KernelSpec::airy(), -2.0}, {KernelSpec::bessel(0.0), 4.0}};
  for (const auto& c : cases) {
    IntervalSpec iv(c.k.family, c.s);
    Discretization d40 = build_discretization(c.k, iv, 40), d80 = build_discretization(c.k, iv, 80);
    Spectrum a = compute_spectrum(d40), b = compute_spectrum(d80);
    CHECK(std::fabs(log_fredholm_det(a, 1.0) - log_fredholm_det(b, 1.0)) <= 1e-9);
    // trace identity
    double sum = std::accumulate(b.eigenvalues.begin(), b.eigenvalues.end(), 0.0);
    CHECK(std::fabs(sum - d80.matrix.trace()) <= 1e-12 * d80.matrix.trace());
    // simple spectrum at the top; the tail below rounding level is excluded
    for (int i = 0; i < 10; ++i) {
      if (b.eigenvalues[i + 1] < 1e-14) break;
      CHECK(b.eigenvalues[i] - b.eigenvalues[i + 1] > 0.0);
    }
  }
}

TEST_CASE("largest Airy eigenvalue grows with the interval") {
  double prev = 0.0;
  for (double s : {-1.0, -2.0, -4.0}) {
    Spectrum sp = compute_spectrum(build_discretization(KernelSpec::airy(), IntervalSpec(Family::Airy, s), 60));
    CHECK(sp.eigenvalues[0] > prev);
    prev = sp.eigenvalues[0];
  }
}

TEST_CASE("fredholm determinants") {
  Spectrum half = Spectrum::from_values({0.5});
  CHECK(fredholm_det(half, 0.0) == 1.0);
  CHECK(fredholm_det(half, 1.0) == 0.5);
  Spectrum two = Spectrum::from_values({0.9, 0.5});
  CHECK(std::fabs(fredholm_det(two, 10.0 / 9.0)) <= 1e-15);
  CHECK_THROWS_AS(log_fredholm_det(two, 10.0 / 9.0), PoleError);
  CHECK_THROWS_AS(log_fredholm_det(two, 1.5), PoleError);
  CHECK(log_fredholm_det(two, 0.0) == 0.0);

  Spectrum sp = compute_spectrum(build_discretization(KernelSpec::airy(), IntervalSpec(Family::Airy, -3.0), 60));
  for (double g : {0.1, 0.5, 0.9, 1.0}) {
    double d = fredholm_det(sp, g);
    CHECK(d > 0.0);
    CHECK(d <= 1.0);
    CHECK(std::log(d) == doctest::Approx(log_fredholm_det(sp, g)).epsilon(1e-12));
  }
  // v-based coupling agrees with gamma-based coupling
  double v = 3.0;
  CHECK(log_fredholm_det(sp, Coupling::from_excess(v)) ==
        doctest::Approx(log_fredholm_det(sp, 1.0 - std::exp(-v))).epsilon(1e-12));
  CHECK_THROWS_AS(Coupling::from_excess(0.0), ArgumentError);
}

TEST_CASE("counting probabilities") {
  Spectrum empty = Spectrum::from_values({});
  CHECK(counting_prob(empty, 0) == 1.0);
  CHECK(counting_prob(empty, 3) == 0.0);
  Spectrum half = Spectrum::from_values({0.5});
  CHECK(counting_prob(half, 0) == 0.5);
  CHECK(counting_prob(half, 1) == 0.5);
  CHECK(counting_ratio(half, 1) == 1.0);
  Spectrum two = Spectrum::from_values({0.5, 0.2});
  CHECK(counting_ratio(two, 2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(counting_ratio(two, 1) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK_THROWS_AS(counting_ratio(Spectrum::from_values({1.0}), 1), DegeneracyError);

  Spectrum sp = compute_spectrum(build_discretization(KernelSpec::airy(), IntervalSpec(Family::Airy, -2.0), 60));
  std::vector<double> e = counting_distribution(sp, 60);
  double total = std::accumulate(e.begin(), e.end(), 0.0);
  CHECK(std::fabs(total - 1.0) <= 1e-10);
  CHECK(e[0] == doctest::Approx(fredholm_det(sp, 1.0)).epsilon(1e-13));
  for (int n = 1; n <= 5; ++n) CHECK(counting_ratio(sp, n) == doctest::Approx(e[n] / e[0]).epsilon(1e-12));
  // generating function: D(gamma) = sum_n E(n) (1 - gamma)^n
  double g = 0.9, gen = 0.0;
  for (int n = 0; n <= 60; ++n) gen += e[n] * std::pow(1.0 - g, n);
  CHECK(std::fabs(gen - fredholm_det(sp, g)) <= 1e-10);
  // thinned counting at gamma also normalises
  std::vector<double> eg = counting_distribution(sp, 60, 0.7);
  CHECK(std::fabs(std::accumulate(eg.begin(), eg.end(), 0.0) - 1.0) <= 1e-10);
}

TEST_CASE("trace norm") {
  for (auto [k, s] : {std::pair{KernelSpec::airy(), -2.0}, std::pair{KernelSpec::bessel(0.0), 9.0},
                      std::pair{KernelSpec::sine(), 2.0}}) {
    IntervalSpec iv(k.family, s);
    Discretization d = build_discretization(k, iv, 50);
    Spectrum sp = compute_spectrum(d);
    double tn = trace_norm(k, iv, 50);
    CHECK(std::fabs(tn - d.matrix.trace()) <= 1e-14 * tn);
    double sum = std::accumulate(sp.eigenvalues.begin(), sp.eigenvalues.end(), 0.0);
    CHECK(std::fabs(tn - sum) <= 1e-10 * tn);
  }
  CHECK(trace_norm(KernelSpec::sine(), IntervalSpec(Family::Sine, 2.0), 20) == doctest::Approx(4.0 / specfun::pi));
  double a1 = trace_norm(KernelSpec::airy(), IntervalSpec(Family::Airy, -1.0), 60);
  double a2 = trace_norm(KernelSpec::airy(), IntervalSpec(Family::Airy, -2.0), 60);
  double a4 = trace_norm(KernelSpec::airy(), IntervalSpec(Family::Airy, -4.0), 60);
  CHECK(a1 < a2);
  CHECK(a2 < a4);
  // Bessel a = 0: trace / t stays near 1/pi (the diagonal decays like 1/(2 pi sqrt(lambda)));
  // the correction oscillates, so stability is a spread bound rather than a monotone trend
  for (double s : {25.0, 100.0, 400.0}) {
    double c = trace_norm(KernelSpec::bessel(0.0), IntervalSpec(Family::Bessel, s), 120) / std::sqrt(s);
    CHECK(c == doctest::Approx(1.0 / specfun::pi).epsilon(0.01));
  }
  CHECK_THROWS_AS(trace_norm(KernelSpec::sine(), IntervalSpec(Family::Sine, 2.0), 19), ArgumentError);
}

TEST_CASE("finite-difference log derivative") {
  CHECK(d_ds_log_det(KernelSpec::airy(), -3.0, 0.0, 1e-3, 40) == 0.0);
  CHECK_THROWS_AS(d_ds_log_det(KernelSpec::airy(), -3.0, 1.0, 1e-6, 40), ArgumentError);
  CHECK_THROWS_AS(d_ds_log_det(KernelSpec::airy(), -3.0, 1.0 - 1e-15, 1e-3, 40), ArgumentError);
  double s = -6.0;
  double fd = d_ds_log_det(KernelSpec::airy(), s, 1.0, 1e-3, 80);
  CHECK(std::fabs(fd - (s * s / 4 - 1 / (8 * s))) <= 0.02 * (s * s / 4 - 1 / (8 * s)));
  double fb = d_ds_log_det(KernelSpec::bessel(0.0), 100.0, 1.0, 1e-3, 100);
  CHECK(std::fabs(fb + 0.25) <= 0.02 * 0.25);
}
