#include "gapspec/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "gapspec/asymptotics.hpp"
#include "gapspec/errors.hpp"
#include "gapspec/operator.hpp"
#include "gapspec/verify.hpp"

namespace gapspec::verify {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

void add(CriterionResult& r, const std::string& name, double v) { r.metrics.push_back({name, v}); }

bool all_valid(const ScanResult& s) {
  return std::all_of(s.valid.begin(), s.valid.end(), [](bool b) { return b; });
}

std::string family_tag(Family f, double a) {
  if (f != Family::Bessel) return family_name(f);
  return fmt("bessel(a=%g)", a);
}

// Criteria 2-4: first-point tolerance plus a decreasing trend.
void eig_law(CriterionResult& r, Family family, const std::vector<double>& as, const std::vector<double>& grid,
             double first_tol, const AcceptanceOptions& opt) {
  bool pass = true;
  std::string bad;
  for (double a : as) {
    for (int i : {0, 1}) {
      ScanResult s = eig_ratio_scan(family, i, grid, a, opt.n, opt.jobs);
      std::string tag = family_tag(family, a) + fmt(" i=%g", i);
      for (std::size_t k = 0; k < s.size(); ++k) add(r, tag + fmt(" t=%g rel_error", s.grid[k]), s.rel_error[k]);
      bool ok = all_valid(s) && s.rel_error[0] <= first_tol && decreasing(s.rel_error, 1);
      if (!ok) {
        pass = false;
        bad += (bad.empty() ? "" : "; ") + tag + fmt(" err[0]=%.3g", s.rel_error[0]);
        if (!decreasing(s.rel_error, 1)) bad += " not decreasing";
      }
    }
  }
  r.pass = pass;
  r.detail = pass ? fmt("all rel errors within %.0f%% at the first point and decreasing", first_tol * 100)
                  : "failed: " + bad;
}

void c1(CriterionResult& r, const AcceptanceOptions&) {
  struct Case {
    KernelSpec k;
    double s;
  } cases[] = {{KernelSpec::sine(), 2.0}, {KernelSpec::airy(), -2.0}, {KernelSpec::bessel(0.0), 4.0}};
  double worst = 0.0;
  for (const auto& c : cases) {
    Coupling one = Coupling::from_gamma(1.0);
    double d = std::fabs(log_det_at(c.k, c.s, one, 40) - log_det_at(c.k, c.s, one, 80));
    add(r, family_name(c.k.family) + " |logdet(40) - logdet(80)|", d);
    worst = std::max(worst, d);
  }
  r.pass = worst <= 1e-9;
  r.detail = fmt("max |logdet(40) - logdet(80)| = %.3g (tol 1e-9)", worst);
}

void c5_6(CriterionResult& r, Family family, const AcceptanceOptions& opt) {
  std::vector<double> grid = {8.0, 10.0, 12.0};
  std::vector<double> as = family == Family::Bessel ? std::vector<double>{0.0, 1.0} : std::vector<double>{0.0};
  double scale = 1.0 + opt.perturb;
  bool pass = true;
  double worst_c = 0.0;
  std::string bad;
  for (double a : as) {
    for (double chi : {0.0, 0.5}) {
      ScanResult s = det_ratio_scan(family, chi, grid, a, opt.n, opt.jobs, scale);
      std::string tag = family_tag(family, a) + fmt(" chi=%g", chi);
      for (std::size_t k = 0; k < s.size(); ++k) add(r, tag + fmt(" t=%g |dlog|", s.grid[k]), s.rel_error[k]);
      double c = s.fitted_constant.value_or(INFINITY);
      add(r, tag + " C", c);
      worst_c = std::max(worst_c, c);
      bool ok = all_valid(s) && c < 10.0 && decreasing(s.rel_error, 0);
      if (!ok) {
        pass = false;
        bad += (bad.empty() ? "" : "; ") + tag + fmt(" C=%.3g", c);
        if (!decreasing(s.rel_error, 0)) bad += " not decreasing";
      }
    }
  }
  r.pass = pass;
  r.detail = pass ? fmt("fitted C <= %.3g (< 10), errors decreasing", worst_c) : "failed: " + bad;
}

void c7(CriterionResult& r, const AcceptanceOptions& opt) {
  double scale = 1.0 + opt.perturb;
  ScanResult ai = gap_constant_scan(Family::Airy, {-4.0, -5.0, -6.0}, 0.0, opt.n, opt.jobs);
  std::vector<double> err;
  for (std::size_t k = 0; k < ai.size(); ++k) {
    double e = std::fabs(ai.numeric[k] / (ai.predicted[k] * scale) - 1.0);
    err.push_back(e);
    add(r, fmt("airy s=%g prefactor", ai.grid[k]), ai.numeric[k]);
    add(r, fmt("airy s=%g rel_error", ai.grid[k]), e);
  }
  bool airy_ok = all_valid(ai) && err.back() <= 0.02 && decreasing(err, 0);
  double worst_b = 0.0;
  bool bess_ok = true;
  for (double a : {0.0, 1.0}) {
    ScanResult b = gap_constant_scan(Family::Bessel, {144.0}, a, opt.n, opt.jobs);
    double e = std::fabs(b.numeric[0] / (b.predicted[0] * scale) - 1.0);
    add(r, fmt("bessel a=%g s=144 prefactor", a), b.numeric[0]);
    add(r, fmt("bessel a=%g s=144 rel_error", a), e);
    worst_b = std::max(worst_b, e);
    bess_ok = bess_ok && b.valid[0] && e <= 0.02;
  }
  r.pass = airy_ok && bess_ok;
  r.detail = fmt("airy c0 error %.3g at s=-6, bessel tau_a error <= %.3g at s=144 (tol 0.02)", err.back(), worst_b);
  if (!decreasing(err, 0)) r.detail += "; airy prefactor not converging monotonically";
}

void c8(CriterionResult& r, const AcceptanceOptions&) {
  std::mt19937 rng(8u);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int c = 0; c < 20; ++c) {
    int fam = static_cast<int>(3.0 * u(rng));
    KernelSpec spec = KernelSpec::sine();
    double s = 0.5 + 3.5 * u(rng);
    if (fam == 1) {
      spec = KernelSpec::airy();
      s = -4.0 + 6.0 * u(rng);
    } else if (fam == 2) {
      static const double orders[] = {-0.5, 0.0, 1.0};
      spec = KernelSpec::bessel(orders[c % 3]);
      s = 1.0 + 39.0 * u(rng);
    }
    double v = 0.1 + 29.9 * u(rng);
    int p = static_cast<int>(7.0 * u(rng));
    Spectrum sp = compute_spectrum(build_discretization(spec, IntervalSpec(spec.family, s), 40));
    LidskiiSplit split = lidskii_split(sp, v, p);
    double lhs = split.log_residual;
    for (double f : split.factors) lhs += std::log(f);
    double rhs = log_fredholm_det(sp, Coupling::from_excess(v)) - log_fredholm_det(sp, 1.0);
    worst = std::max(worst, std::fabs(std::expm1(lhs - rhs)));
  }
  add(r, "max relative deviation", worst);
  r.pass = worst <= 1e-12;
  r.detail = fmt("max |factors*residual / (D(gamma)/D(1)) - 1| = %.3g over 20 cases (tol 1e-12)", worst);
}

void c9(CriterionResult& r, const AcceptanceOptions& opt) {
  const double inf = std::numeric_limits<double>::infinity();
  LogDerivCheck ai = logderiv_check(KernelSpec::airy(), -6.0, inf, 0.0, opt.n, 1e-3);
  LogDerivCheck be = logderiv_check(KernelSpec::bessel(0.0), 100.0, inf, 0.0, opt.n, 1e-3);
  add(r, "airy s=-6 finite difference", ai.finite_difference);
  add(r, "airy s=-6 asymptotic", ai.asymptotic);
  add(r, "airy s=-6 rel_error", ai.rel_error);
  add(r, "bessel s=100 finite difference", be.finite_difference);
  add(r, "bessel s=100 asymptotic", be.asymptotic);
  add(r, "bessel s=100 rel_error", be.rel_error);
  r.pass = ai.rel_error <= 0.02 && be.rel_error <= 0.02;
  r.detail = fmt("airy %.3g, bessel %.3g (tol 0.02)", ai.rel_error, be.rel_error);
}

void c10(CriterionResult& r, const AcceptanceOptions&) {
  double worst = 0.0;
  for (double v : {2.0, 10.0, 35.0}) {
    for (double t : {5.0, 9.0, 16.0}) {
      double sa = -std::pow(t, 2.0 / 3.0);
      asymp::TransitionExpansion ea = asymp::airy_transition(sa, v, 5);
      asymp::TransitionExpansion es = asymp::sine_transition(t, v, 5);
      for (int i = 0; i < 5; ++i) {
        worst = std::max(worst, std::fabs(std::expm1(ea.log_excess[i] + v + asymp::log_airy_eig(i, sa))));
        worst = std::max(worst, std::fabs(std::expm1(es.log_excess[i] + v + asymp::log_sine_eig(i, t))));
      }
      for (double a : {-0.5, 0.0, 1.0, 2.5}) {
        asymp::TransitionExpansion eb = asymp::bessel_transition(t * t, v, a, 5);
        for (int i = 0; i < 5; ++i) {
          worst = std::max(worst, std::fabs(std::expm1(eb.log_excess[i] + v + asymp::log_bessel_eig(i, t * t, a))));
        }
      }
    }
  }
  add(r, "max |(factor-1) e^v (1-lambda) - 1|", worst);
  r.pass = worst <= 1e-12;
  r.detail = fmt("max deviation %.3g (tol 1e-12)", worst);
}

void c11(CriterionResult& r, const AcceptanceOptions& opt) {
  Spectrum sp = compute_spectrum(build_discretization(KernelSpec::airy(), IntervalSpec(Family::Airy, -2.0), opt.n));
  std::vector<double> e = counting_distribution(sp, sp.n);
  double sum = 0.0;
  for (double x : e) sum += x;
  // independent route: coefficients of D(1 - z) = prod((1 - lambda) + lambda z)
  std::vector<double> poly{1.0};
  for (double l : sp.eigenvalues) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j] += (1.0 - l) * poly[j];
      next[j + 1] += l * poly[j];
    }
    poly = std::move(next);
  }
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) {
    double want = poly[n] / poly[0];
    worst = std::max(worst, std::fabs(counting_ratio(sp, n) / want - 1.0));
  }
  add(r, "|sum E(n) - 1|", std::fabs(sum - 1.0));
  add(r, "max relative error of r(n), n <= 8", worst);
  r.pass = std::fabs(sum - 1.0) <= 1e-10 && worst <= 1e-12;
  r.detail = fmt("|sum - 1| = %.3g (tol 1e-10), r(n) deviation %.3g (tol 1e-12)", std::fabs(sum - 1.0), worst);
}

void c12(CriterionResult& r, const AcceptanceOptions&) {
  double d = convolution_check(-3.0, 25, 120);
  add(r, "max deviation", d);
  r.pass = d <= 1e-7;
  r.detail = fmt("max |K - convolution| = %.3g over 25 samples (tol 1e-7)", d);
}

void c13(CriterionResult& r, const AcceptanceOptions&) {
  double r400 = commuting_residual(KernelSpec::sine(), 0, 3.0, 80, 400);
  double r800 = commuting_residual(KernelSpec::sine(), 0, 3.0, 80, 800);
  add(r, "residual m=400", r400);
  add(r, "residual m=800", r800);
  r.pass = r800 <= 1e-3 && r800 < r400;
  r.detail = fmt("residual %.3g at m=400, %.3g at m=800 (tol 1e-3, decreasing)", r400, r800);
}

}  // namespace

std::string criterion_title(int id) {
  static const char* titles[] = {"",
                                 "quadrature convergence",
                                 "airy eigenvalue law",
                                 "bessel eigenvalue law",
                                 "sine eigenvalue law",
                                 "airy transition expansion",
                                 "bessel transition expansion",
                                 "gap constants",
                                 "lidskii algebra",
                                 "log-derivative expansions",
                                 "reciprocity identity",
                                 "counting normalization",
                                 "convolution identity",
                                 "commuting-operator residual"};
  if (id < 1 || id > kCriterionCount) throw ArgumentError("criterion id must lie in 1..13");
  return titles[id];
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  auto t0 = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
  try {
    switch (id) {
      case 1: c1(r, opt); break;
      case 2: eig_law(r, Family::Airy, {0.0}, {8.0, 10.0, 12.0, 14.0}, 0.25, opt); break;
      case 3: eig_law(r, Family::Bessel, {-0.5, 0.0, 1.0}, {6.0, 8.0, 10.0, 12.0}, 0.25, opt); break;
      case 4: eig_law(r, Family::Sine, {0.0}, {5.0, 6.0, 7.0, 8.0}, 0.20, opt); break;
      case 5: c5_6(r, Family::Airy, opt); break;
      case 6: c5_6(r, Family::Bessel, opt); break;
      case 7: c7(r, opt); break;
      case 8: c8(r, opt); break;
      case 9: c9(r, opt); break;
      case 10: c10(r, opt); break;
      case 11: c11(r, opt); break;
      case 12: c12(r, opt); break;
      case 13: c13(r, opt); break;
    }
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = elapsed();
  // runtime budgets
  double budget = id == 1 ? 5.0 : (id >= 2 && id <= 4 ? 30.0 : INFINITY);
  if (r.seconds > budget) {
    r.pass = false;
    r.detail += fmt("; runtime %.1f s over budget %.0f s", r.seconds, budget);
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, const std::vector<int>& only) {
  std::vector<int> ids = only;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id, opt));
  return out;
}

std::string format_line(const CriterionResult& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s %2d %-30s %7.2fs  ", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.seconds);
  return buf + r.detail;
}

}  // namespace gapspec::verify
