#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gapspec/asymptotics.hpp"
#include "gapspec/errors.hpp"
#include "gapspec/verify.hpp"
#include "reference_values.hpp"

using namespace gapspec;
using namespace gapspec::verify;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("fit helpers") {
  CHECK(decreasing({3, 2, 1}, 0));
  CHECK_FALSE(decreasing({3, 2, 2}, 0));
  CHECK(decreasing({3, 4, 2, 1}, 1));
  CHECK_FALSE(decreasing({3, 4, 5, 1}, 1));
  auto slope = fit_loglog_slope({1, 2, 4, 8}, {1, 0.5, 0.25, 0.125});
  REQUIRE(slope);
  CHECK(*slope == doctest::Approx(-1.0));
  CHECK_FALSE(fit_loglog_slope({1}, {1}));
}

TEST_CASE("eigenvalue scans") {
  ScanResult a = eig_ratio_scan(Family::Airy, 0, {8, 10, 12, 14});
  REQUIRE(a.size() == 4);
  CHECK(a.valid[1]);
  CHECK(a.rel_error[1] <= 0.25);
  CHECK(decreasing(a.rel_error, 0));
  CHECK(a.predicted[1] == doctest::Approx(ref::airy_eig_0_t10).epsilon(1e-12));
  CHECK(*a.fitted_slope < 0.0);

  ScanResult s = eig_ratio_scan(Family::Sine, 0, {8});
  CHECK(std::fabs(s.numeric[0] / ref::sine_eig_0_8 - 1.0) <= 0.2);

  // 1 - lambda_0 underflows the resolvable range for a large interval
  ScanResult far = eig_ratio_scan(Family::Sine, 0, {20});
  CHECK_FALSE(far.valid[0]);
  CHECK(far.notes[0].find("precision") != std::string::npos);

  CHECK_THROWS_AS(eig_ratio_scan(Family::Airy, 0, {8}, 0.0, 10), ArgumentError);
}

TEST_CASE("scans are deterministic under parallel execution") {
  std::vector<double> grid = {6, 7, 8, 9, 10};
  ScanResult one = det_ratio_scan(Family::Bessel, 0.0, grid, 1.0, 80, 1);
  ScanResult four = det_ratio_scan(Family::Bessel, 0.0, grid, 1.0, 80, 4);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(one.grid[k] == four.grid[k]);
    CHECK(one.numeric[k] == four.numeric[k]);
    CHECK(one.predicted[k] == four.predicted[k]);
  }
}

TEST_CASE("oracle is quadrature-converged at scan sizes") {
  ScanResult e60 = eig_ratio_scan(Family::Airy, 1, {8, 14}, 0.0, 60);
  ScanResult e100 = eig_ratio_scan(Family::Airy, 1, {8, 14}, 0.0, 100);
  // log-determinants only down to 1 - lambda_0 ~ 1e-7: below that the eigenvalue rounding
  // floor eps / (1 - lambda_0) exceeds 1e-9 whatever n is
  ScanResult d60 = det_ratio_scan(Family::Bessel, 0.5, {6, 8}, 0.0, 60);
  ScanResult d100 = det_ratio_scan(Family::Bessel, 0.5, {6, 8}, 0.0, 100);
  ScanResult s60 = eig_ratio_scan(Family::Sine, 1, {5, 8}, 0.0, 60);
  ScanResult s100 = eig_ratio_scan(Family::Sine, 1, {5, 8}, 0.0, 100);
  for (int k = 0; k < 2; ++k) {
    CHECK(std::fabs(e60.numeric[k] - e100.numeric[k]) < 1e-9);
    CHECK(std::fabs(d60.numeric[k] - d100.numeric[k]) < 1e-9);
    CHECK(std::fabs(s60.numeric[k] - s100.numeric[k]) < 1e-9);
  }
}

TEST_CASE("determinant scans") {
  ScanResult a = det_ratio_scan(Family::Airy, 0.0, {8, 10, 12, 14});
  CHECK(a.p == 1);
  CHECK(a.exponent == 0.5);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a.valid[k]);
    CHECK(a.rel_error[k] <= 5.0 / std::sqrt(a.grid[k]));
  }

  // chi = -1: empty product, the prediction is the gap expansion at gamma < 1
  ScanResult g = det_ratio_scan(Family::Airy, -1.0, {8, 10});
  CHECK(g.p == 0);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(g.predicted[k] == asymp::airy_gap(g.s[k]));

  ScanResult b = det_ratio_scan(Family::Bessel, 0.0, {6, 8, 10});
  REQUIRE(b.fitted_constant);
  double c_first = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    double c = b.rel_error[k] / std::max(std::pow(b.grid[k], -b.exponent), std::log(b.grid[k]) / b.grid[k]);
    if (k == 0) c_first = c;
    CHECK(c <= 2.0 * c_first);
  }
  CHECK(*b.fitted_constant < 1.0);
}

TEST_CASE("Lidskii split") {
  Spectrum half = Spectrum::from_values({0.5});
  LidskiiSplit sp = lidskii_split(half, std::log(2.0), 1);
  REQUIRE(sp.factors.size() == 1);
  CHECK(sp.factors[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(sp.residual == 1.0);

  Spectrum s = Spectrum::from_values({0.9, 0.6, 0.2, 0.01});
  LidskiiSplit none = lidskii_split(s, 1.0, 0);
  CHECK(none.factors.empty());
  double full = 1.0;
  for (double l : s.eigenvalues) full *= 1.0 + std::exp(-1.0) * l / (1.0 - l);
  CHECK(none.residual == doctest::Approx(full).epsilon(1e-14));

  LidskiiSplit big = lidskii_split(s, 800.0, 3);
  for (double f : big.factors) CHECK(f == 1.0);
  CHECK(big.residual == 1.0);
  CHECK_THROWS_AS(lidskii_split(Spectrum::from_values({1.0}), 1.0, 1), DegeneracyError);

  // factors * residual = D(gamma) / D(1) on random spectra
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int c = 0; c < 50; ++c) {
    std::vector<double> vals;
    int m = 1 + static_cast<int>(30 * u(rng));
    for (int j = 0; j < m; ++j) vals.push_back(std::pow(u(rng), 3.0) * 0.999999);
    Spectrum sp2 = Spectrum::from_values(vals);
    double v = 0.01 + 40.0 * u(rng);
    int p = static_cast<int>(8 * u(rng));
    LidskiiSplit ls = lidskii_split(sp2, v, p);
    double lhs = ls.log_residual;
    for (double f : ls.factors) lhs += std::log(f);
    double rhs = log_fredholm_det(sp2, Coupling::from_excess(v)) - log_fredholm_det(sp2, 1.0);
    CHECK(std::fabs(std::expm1(lhs - rhs)) <= 1e-12);
  }
}

TEST_CASE("Stokes crossing detection") {
  ScanResult q1 = stokes_crossing_scan(Family::Airy, 1, {8, 10, 12, 16});
  for (std::size_t k = 0; k < q1.size(); ++k) CHECK(q1.valid[k]);
  CHECK(std::fabs(q1.numeric[1] - q1.predicted[1]) <= 1.0);
  // relative offset shrinks with t
  CHECK(q1.rel_error[2] < q1.rel_error[0]);
  CHECK(q1.rel_error[3] < q1.rel_error[2]);

  ScanResult q2 = stokes_crossing_scan(Family::Airy, 2, {10});
  REQUIRE(q2.valid[0]);
  CHECK(q1.numeric[1] > q2.numeric[0]);

  ScanResult b = stokes_crossing_scan(Family::Bessel, 1, {6, 8, 10}, 0.0);
  for (std::size_t k = 0; k < b.size(); ++k) {
    CHECK(b.valid[k]);
    CHECK(std::fabs(b.numeric[k] - b.predicted[k]) < 3.0);
  }
  CHECK_THROWS_AS(stokes_crossing_scan(Family::Sine, 1, {8}), ArgumentError);
}

TEST_CASE("commuting operator residual") {
  double r400 = commuting_residual(KernelSpec::sine(), 0, 3.0, 80, 400);
  double r800 = commuting_residual(KernelSpec::sine(), 0, 3.0, 80, 800);
  CHECK(r800 <= 1e-3);
  CHECK(r800 < r400);
  // a few more eigenfunctions and the other kernels
  CHECK(commuting_residual(KernelSpec::sine(), 3, 3.0, 80, 800) <= 1e-3);
  CHECK(commuting_residual(KernelSpec::airy(), 0, -2.0, 100, 800) <= 1e-3);
  CHECK(commuting_residual(KernelSpec::bessel(0.0), 0, 16.0, 100, 800) <= 1e-3);

  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  std::vector<double> coef(12);
  for (double& c : coef) c = g(rng);
  auto generic = [&](double x) {
    double y = 0.0;
    for (std::size_t k = 0; k < coef.size(); ++k) y += coef[k] * std::cos((k + 1) * x);
    return y;
  };
  CHECK(commuting_residual(KernelSpec::sine(), 3.0, generic, 800) > 0.1);
}

TEST_CASE("eigenfunction interpolation reproduces nodal values") {
  Discretization d = build_discretization(KernelSpec::sine(), IntervalSpec(Family::Sine, 2.0), 30);
  Spectrum sp = compute_spectrum(d, true);
  auto f = eigenfunction(KernelSpec::sine(), d, sp, 0);
  double norm = 0.0;
  for (int j = 0; j < d.n; ++j) norm += d.quad.weights[j] * f(d.quad.nodes[j]) * f(d.quad.nodes[j]);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  // the interpolant satisfies the Nystrom eigen-equation between nodes
  double x = 0.123;
  double kf = 0.0;
  for (int j = 0; j < d.n; ++j) kf += d.quad.weights[j] * kernel_eval(KernelSpec::sine(), x, d.quad.nodes[j]) * f(d.quad.nodes[j]);
  CHECK(kf == doctest::Approx(sp.eigenvalues[0] * f(x)).epsilon(1e-10));
}

TEST_CASE("convolution check") {
  CHECK(convolution_check(-3.0, 25, 120) <= 1e-7);
  CHECK(convolution_check(1.0, 10, 120) <= 1e-7);
  CHECK_THROWS_AS(convolution_check(-3.0, 0, 120), ArgumentError);
}

TEST_CASE("log-derivative check") {
  LogDerivCheck a = logderiv_check(KernelSpec::airy(), -6.0, kInf, 0.0, 100, 1e-3);
  CHECK(a.rel_error <= 0.02);
  LogDerivCheck b = logderiv_check(KernelSpec::bessel(0.0), 100.0, kInf, 0.0, 100, 1e-3);
  CHECK(b.rel_error <= 0.02);
  CHECK(b.asymptotic == -0.25);
  CHECK_THROWS_AS(logderiv_check(KernelSpec::airy(), -6.0, 0.0, 0.0, 100, 1e-3), ArgumentError);
  CHECK_THROWS_AS(logderiv_check(KernelSpec::sine(), 3.0, kInf, 0.0, 100, 1e-3), ArgumentError);
}
