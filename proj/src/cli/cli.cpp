#include "gapspec/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>

#include "emit.hpp"
#include "gapspec/acceptance.hpp"
#include "gapspec/asymptotics.hpp"
#include "gapspec/errors.hpp"
#include "gapspec/operator.hpp"
#include "gapspec/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gapspec::cli {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Opts {
  std::string kernel;
  double a = 0.0;
  double s = 0.0;
  double t = 0.0;
  int n = 100;
  std::string format = "csv";
  std::string output;
  std::string config;
  int jobs = 1;
  bool timings = false;

  int top = 10;
  double gamma = 0.0;
  double v = 0.0;
  double chi = 0.0;
  std::string formula;
  int index = 0;
  int p = 0;
  int k = 0;
  double alpha = 0.0;
  std::string branch = "auto";
  std::string type;
  std::vector<double> grid;
  int q = 1;
  std::vector<int> only;
  double perturb = 0.0;
};

struct App {
  Opts o;
  CLI::App app{"Fredholm determinants and spectra of the sine, Airy and Bessel kernels", "gapspec"};
  CLI::App* spectrum = nullptr;
  CLI::App* det = nullptr;
  CLI::App* asymp = nullptr;
  CLI::App* scan = nullptr;
  CLI::App* verify = nullptr;
};

void add_common(CLI::App* sub, Opts& o, bool kernel_opts) {
  if (kernel_opts) {
    sub->add_option("--kernel", o.kernel, "sine | airy | bessel")
        ->check(CLI::IsMember({"sine", "airy", "bessel"}, CLI::ignore_case));
    sub->add_option("--a", o.a, "Bessel order, a > -1 (required for bessel)");
    sub->add_option("--s", o.s, "interval endpoint");
  }
  sub->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--output", o.output, "write the table here instead of stdout");
  sub->add_option("--config", o.config, "JSON file of option defaults; flags on the command line win");
}

void add_n(CLI::App* sub, Opts& o) {
  sub->add_option("--n", o.n, "quadrature nodes")->check(CLI::Range(20, 1000))->capture_default_str();
}

void add_jobs(CLI::App* sub, Opts& o) {
  sub->add_option("--jobs", o.jobs, "worker threads")
      ->check(CLI::PositiveNumber)
      ->envname("GAPSPEC_JOBS")
      ->capture_default_str();
  sub->add_flag("--timings", o.timings, "report wall-clock seconds");
}

std::unique_ptr<App> build_app() {
  auto a = std::make_unique<App>();
  Opts& o = a->o;
  CLI::App& app = a->app;
  app.require_subcommand(1);

  a->spectrum = app.add_subcommand("spectrum", "leading eigenvalues of the discretized operator");
  add_common(a->spectrum, o, true);
  add_n(a->spectrum, o);
  a->spectrum->add_option("--top", o.top, "number of eigenvalues")->check(CLI::PositiveNumber)->capture_default_str();
  add_jobs(a->spectrum, o);

  a->det = app.add_subcommand("det", "log D(J; gamma) for one of --gamma, --v, --chi");
  add_common(a->det, o, true);
  add_n(a->det, o);
  a->det->add_option("--gamma", o.gamma, "coupling");
  a->det->add_option("--v", o.v, "-log(1 - gamma), v > 0");
  a->det->add_option("--chi", o.chi, "Stokes-curve parameter; v follows from (t, chi)");
  add_jobs(a->det, o);

  a->asymp = app.add_subcommand("asymp", "evaluate a closed-form asymptotic formula");
  add_common(a->asymp, o, true);
  a->asymp->add_option("--formula", o.formula, "p_of_chi | stokes_v | eig | gap | transition | sigma | logderiv | constants")
      ->check(CLI::IsMember({"p_of_chi", "stokes_v", "eig", "gap", "transition", "sigma", "logderiv", "constants"}));
  a->asymp->add_option("--t", o.t, "scaling variable, instead of --s");
  a->asymp->add_option("--gamma", o.gamma, "coupling");
  a->asymp->add_option("--v", o.v, "-log(1 - gamma)");
  a->asymp->add_option("--chi", o.chi, "Stokes-curve parameter");
  a->asymp->add_option("--index", o.index, "eigenvalue index")->check(CLI::NonNegativeNumber);
  a->asymp->add_option("--p", o.p, "number of explicit factors")->check(CLI::NonNegativeNumber);
  a->asymp->add_option("--k", o.k, "integer part of chi")->check(CLI::NonNegativeNumber);
  a->asymp->add_option("--alpha", o.alpha, "fractional part of chi");
  a->asymp->add_option("--branch", o.branch, "auto | plus | minus")
      ->check(CLI::IsMember({"auto", "plus", "minus"}))
      ->capture_default_str();

  a->scan = app.add_subcommand("scan", "numerics against asymptotics along a grid");
  add_common(a->scan, o, true);
  add_n(a->scan, o);
  a->scan->add_option("--type", o.type, "eig | det | stokes | gap")->check(CLI::IsMember({"eig", "det", "stokes", "gap"}));
  a->scan->add_option("--grid", o.grid, "comma-separated t values (s values for gap)")->delimiter(',');
  a->scan->add_option("--index", o.index, "eigenvalue index (eig)")->check(CLI::NonNegativeNumber);
  a->scan->add_option("--chi", o.chi, "Stokes-curve parameter (det)");
  a->scan->add_option("--q", o.q, "crossing index (stokes)")->check(CLI::PositiveNumber);
  add_jobs(a->scan, o);

  a->verify = app.add_subcommand("verify", "run the acceptance criteria");
  add_common(a->verify, o, false);
  add_n(a->verify, o);
  a->verify->add_option("--only", o.only, "comma-separated criterion ids")
      ->delimiter(',')
      ->check(CLI::Range(1, verify::kCriterionCount));
  a->verify->add_option("--perturb", o.perturb, "relative perturbation of the asymptotic constants");
  add_jobs(a->verify, o);
  return a;
}

CLI::App* chosen(const App& a) {
  for (CLI::App* sub : {a.spectrum, a.det, a.asymp, a.scan, a.verify})
    if (sub->parsed()) return sub;
  return nullptr;
}

bool given(CLI::App* sub, const std::string& name) {
  const CLI::Option* opt = sub->get_option_no_throw("--" + name);
  return opt != nullptr && opt->count() > 0;
}

std::string scalar_token(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  throw UsageError("config key '" + key + "' must be a string or a number");
}

// Appends the config file's values for options not given on the command line.
void merge_config(const std::string& path, CLI::App* sub, std::vector<std::string>& args) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string& key = it.key();
    const CLI::Option* opt = key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("unknown config key '" + key + "' for " + sub->get_name());
    // the environment only fills in what neither the command line nor the file sets
    bool on_line = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
    });
    if (on_line) continue;
    const nlohmann::json& v = it.value();
    if (v.is_boolean()) {
      if (opt->get_expected_max() != 0) throw UsageError("config key '" + key + "' expects a value");
      if (v.get<bool>()) args.push_back("--" + key);
      continue;
    }
    std::string value;
    if (v.is_array()) {
      for (std::size_t k = 0; k < v.size(); ++k) value += (k ? "," : "") + scalar_token(v[k], key);
    } else {
      value = scalar_token(v, key);
    }
    args.push_back("--" + key + "=" + value);
  }
}

nlohmann::ordered_json echo_value(const std::string& text) {
  if (text == "true" || text == "false") return text == "true";
  char* end = nullptr;
  double x = std::strtod(text.c_str(), &end);
  if (!text.empty() && end != nullptr && *end == '\0') {
    if (std::floor(x) == x && std::fabs(x) < 1e15 && text.find_first_of(".eE") == std::string::npos)
      return static_cast<long long>(x);
    return x;
  }
  return text;
}

json config_echo(CLI::App* sub) {
  json e = json::object();
  e["command"] = sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config" || name == "output") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() == 0) {
        e[name] = true;
      } else if (res.size() == 1 && opt->get_items_expected_max() <= 1) {
        e[name] = echo_value(res.front());
      } else {
        json arr = json::array();
        for (const auto& r : res) arr.push_back(echo_value(r));
        e[name] = std::move(arr);
      }
    } else if (!opt->get_default_str().empty()) {
      e[name] = echo_value(opt->get_default_str());
    }
  }
  return e;
}

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
json opt_num(const std::optional<double>& x) { return x ? num(*x) : json(nullptr); }

struct Output {
  Table table;
  json summary = json::object();
  int exit_code = kOk;
};

KernelSpec kernel_of(const Opts& o, CLI::App* sub) {
  if (!given(sub, "kernel")) throw UsageError("--kernel is required");
  Family f = parse_family(o.kernel);
  if (f == Family::Bessel) {
    if (!given(sub, "a")) throw UsageError("--a is required for the bessel kernel");
    return KernelSpec::bessel(o.a);
  }
  return {f, 0.0};
}

double require_s(const Opts& o, CLI::App* sub) {
  if (!given(sub, "s")) throw UsageError("--s is required");
  return o.s;
}

Output cmd_spectrum(const Opts& o, CLI::App* sub) {
  KernelSpec spec = kernel_of(o, sub);
  IntervalSpec iv(spec.family, require_s(o, sub));
  Discretization d = build_discretization(spec, iv, o.n);
  Spectrum sp = compute_spectrum(d);
  Output out;
  out.table.columns = {"index", "lambda", "one_minus_lambda", "mu"};
  int top = std::min<int>(o.top, static_cast<int>(sp.eigenvalues.size()));
  double trace = 0.0;
  for (double l : sp.eigenvalues) trace += l;
  for (int i = 0; i < top; ++i) {
    double l = sp.eigenvalues[i];
    double c = 1.0 - l;
    out.table.add({i, l, c, c < 1e-15 ? json(nullptr) : json(l / c)});
  }
  out.summary["kernel"] = family_name(spec.family);
  out.summary["a"] = spec.a;
  out.summary["s"] = iv.s();
  out.summary["n"] = d.n;
  out.summary["truncation"] = num(d.truncation);
  out.summary["clamped"] = sp.clamped;
  out.summary["sum_lambda"] = trace;
  return out;
}

Output cmd_det(const Opts& o, CLI::App* sub) {
  KernelSpec spec = kernel_of(o, sub);
  IntervalSpec iv(spec.family, require_s(o, sub));
  int which = given(sub, "gamma") + given(sub, "v") + given(sub, "chi");
  if (which != 1) throw UsageError("give exactly one of --gamma, --v, --chi");

  Coupling c = Coupling::from_gamma(o.gamma);
  double v = kInf;
  if (given(sub, "gamma")) {
    if (o.gamma < 1.0) v = -std::log1p(-o.gamma);
    else if (o.gamma > 1.0) v = std::numeric_limits<double>::quiet_NaN();
  } else {
    if (given(sub, "v")) {
      v = o.v;
    } else {
      std::optional<double> t = iv.t();
      if (!t || *t <= 1.0) throw ArgumentError("--chi needs an interval with t > 1");
      v = asymp::stokes_v(spec.family, *t, o.chi, spec.a);
    }
    if (!(v > 0.0)) throw ArgumentError("v must be positive");
    c = Coupling::from_excess(v);
  }

  Discretization d = build_discretization(spec, iv, o.n);
  Spectrum sp = compute_spectrum(d);
  json log_det = nullptr;
  json det = nullptr;
  std::string note;
  try {
    double L = log_fredholm_det(sp, c);
    log_det = num(L);
    if (L > -708.0 && L < 709.0) det = std::exp(L);
  } catch (const PoleError&) {
    note = "pole: some factor 1 - gamma lambda_i <= 0, log D undefined";
    det = num(fredholm_det(sp, c));
  }

  Output out;
  out.table.columns = {"kernel", "a", "s", "n", "truncation", "gamma", "v", "log_det", "det", "note"};
  out.table.add({family_name(spec.family), spec.a, iv.s(), d.n, num(d.truncation), c.gamma, num(v), log_det, det, note});
  out.summary["clamped"] = sp.clamped;
  out.summary["pole"] = !note.empty();
  return out;
}

asymp::Branch parse_branch(const std::string& b) {
  if (b == "plus") return asymp::Branch::Plus;
  if (b == "minus") return asymp::Branch::Minus;
  return asymp::Branch::Auto;
}

// (s, t) from --t or --s.
std::pair<double, std::optional<double>> endpoint(const Opts& o, CLI::App* sub, Family f) {
  if (given(sub, "t")) return {asymp::s_of_t(f, o.t), o.t};
  double s = require_s(o, sub);
  return {s, IntervalSpec(f, s).t()};
}

double require_t(const std::optional<double>& t) {
  if (!t) throw ArgumentError("the formula needs t > 0 (Airy: s < 0)");
  return *t;
}

// v from --v, --gamma or, failing both, gamma = 1.
double excess_of(const Opts& o, CLI::App* sub) {
  if (given(sub, "v")) return o.v;
  if (given(sub, "gamma")) {
    if (o.gamma > 1.0) throw ArgumentError("gamma > 1 has no real v");
    return o.gamma == 1.0 ? kInf : -std::log1p(-o.gamma);
  }
  return kInf;
}

Output cmd_asymp(const Opts& o, CLI::App* sub) {
  if (!given(sub, "formula")) throw UsageError("--formula is required");
  Output out;
  out.table.columns = {"name", "index", "value"};
  auto row = [&](const std::string& name, json index, json value) { out.table.add({name, std::move(index), std::move(value)}); };
  const std::string& f = o.formula;
  out.summary["formula"] = f;

  if (f == "constants") {
    row("zeta_prime_minus_one", nullptr, std::log(asymp::airy_gap_constant()) - std::log(2.0) / 24.0);
    row("airy_gap_constant", nullptr, asymp::airy_gap_constant());
    row("sine_gap_constant", nullptr, asymp::sine_gap_constant());
    double a = given(sub, "a") ? o.a : 0.0;
    if (a <= -1.0) throw DomainError("Bessel order must exceed -1");
    row("log_tau", nullptr, asymp::log_tau(a));
    row("tau", nullptr, std::exp(asymp::log_tau(a)));
    return out;
  }

  KernelSpec spec = kernel_of(o, sub);
  Family fam = spec.family;

  if (f == "p_of_chi") {
    if (!given(sub, "chi")) throw UsageError("--chi is required");
    row("p", nullptr, asymp::p_of_chi(o.chi, fam));
    if (o.chi >= -0.5) {
      asymp::ChiSplit cs = asymp::chi_decompose(o.chi);
      row("k", nullptr, cs.k);
      row("alpha", nullptr, cs.alpha);
    }
    return out;
  }

  auto [s, t] = endpoint(o, sub, fam);

  if (f == "stokes_v") {
    if (!given(sub, "chi")) throw UsageError("--chi is required");
    double tt = require_t(t);
    double v = asymp::stokes_v(fam, tt, o.chi, spec.a);
    row("t", nullptr, tt);
    row("v", nullptr, v);
    row("kappa", nullptr, v / tt);
    row("gamma", nullptr, -std::expm1(-v));
    return out;
  }
  if (f == "eig") {
    int i = o.index;
    double lg = fam == Family::Sine ? asymp::log_sine_eig(i, s)
              : fam == Family::Airy ? asymp::log_airy_eig(i, s)
                                    : asymp::log_bessel_eig(i, s, spec.a);
    row("log_one_minus_lambda", i, lg);
    row("one_minus_lambda", i, num(std::exp(lg)));
    return out;
  }
  if (f == "gap") {
    double L = fam == Family::Sine ? asymp::sine_det_crit(s)
             : fam == Family::Airy ? asymp::airy_gap(s)
                                   : asymp::bessel_gap(s, spec.a);
    if (fam == Family::Sine && (given(sub, "v") || given(sub, "gamma"))) {
      double v = excess_of(o, sub);
      if (std::isfinite(v)) L = asymp::sine_det_sub(s, v);
    }
    row("log_det", nullptr, L);
    row("det", nullptr, num(std::exp(L)));
    return out;
  }
  if (f == "transition") {
    double v;
    std::optional<double> chi;
    if (given(sub, "chi")) {
      chi = o.chi;
      v = given(sub, "v") || given(sub, "gamma") ? excess_of(o, sub) : asymp::stokes_v(fam, require_t(t), o.chi, spec.a);
    } else {
      if (!given(sub, "v") && !given(sub, "gamma")) throw UsageError("transition needs --chi, --v or --gamma");
      v = excess_of(o, sub);
    }
    int p = given(sub, "p") ? o.p : chi ? asymp::p_of_chi(*chi, fam) : 0;
    if (!given(sub, "p") && !chi) throw UsageError("transition needs --p when --chi is absent");
    asymp::TransitionExpansion e = fam == Family::Sine ? asymp::sine_transition(s, v, p, chi)
                                 : fam == Family::Airy ? asymp::airy_transition(s, v, p, chi)
                                                       : asymp::bessel_transition(s, v, spec.a, p, chi);
    row("v", nullptr, num(v));
    row("p", nullptr, e.p);
    row("log_prefactor", nullptr, num(e.log_prefactor));
    for (std::size_t i = 0; i < e.factors.size(); ++i) {
      row("factor", static_cast<int>(i), num(e.factors[i]));
      row("log_excess", static_cast<int>(i), num(e.log_excess[i]));
    }
    row("log_value", nullptr, num(e.log_value()));
    row("error_exponent", nullptr, opt_num(e.error_exponent));
    // consecutive factors differ by the eigenvalue ratio
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < e.log_excess.size(); ++i) {
      double lg_i = fam == Family::Sine ? asymp::log_sine_eig(static_cast<int>(i), s)
                  : fam == Family::Airy ? asymp::log_airy_eig(static_cast<int>(i), s)
                                        : asymp::log_bessel_eig(static_cast<int>(i), s, spec.a);
      double lg_j = fam == Family::Sine ? asymp::log_sine_eig(static_cast<int>(i + 1), s)
                  : fam == Family::Airy ? asymp::log_airy_eig(static_cast<int>(i + 1), s)
                                        : asymp::log_bessel_eig(static_cast<int>(i + 1), s, spec.a);
      double dev = std::fabs(std::expm1((e.log_excess[i + 1] - e.log_excess[i]) - (lg_i - lg_j)));
      worst = std::max(worst, dev);
    }
    row("reciprocity_deviation", nullptr, worst);
    out.summary["reciprocity_ok"] = worst <= 1e-12;
    return out;
  }
  if (f == "sigma") {
    if (fam == Family::Sine) throw ArgumentError("sigma is defined for airy and bessel");
    double tt = require_t(t);
    if (!given(sub, "k") && !given(sub, "alpha") && given(sub, "chi")) {
      asymp::ChiSplit cs = asymp::chi_decompose(o.chi);
      row("k", nullptr, cs.k);
      row("alpha", nullptr, cs.alpha);
      row("sigma", nullptr, num(asymp::sigma_pm(fam, parse_branch(o.branch), cs.k, cs.alpha, tt, spec.a)));
      return out;
    }
    row("sigma", nullptr, num(asymp::sigma_pm(fam, parse_branch(o.branch), o.k, o.alpha, tt, spec.a)));
    return out;
  }
  if (f == "logderiv") {
    double v = excess_of(o, sub);
    double chi = given(sub, "chi") ? o.chi : 0.0;
    double d;
    if (fam == Family::Airy) d = asymp::airy_logderiv_asymp(s, v, chi, parse_branch(o.branch));
    else if (fam == Family::Bessel) d = asymp::bessel_logderiv_asymp(s, v, chi, spec.a, parse_branch(o.branch));
    else throw ArgumentError("logderiv is defined for airy and bessel");
    row("d_ds_log_det", nullptr, num(d));
    return out;
  }
  throw UsageError("unknown formula '" + f + "'");
}

Output cmd_scan(const Opts& o, CLI::App* sub) {
  if (!given(sub, "type")) throw UsageError("--type is required");
  if (o.grid.empty()) throw UsageError("--grid is required");
  KernelSpec spec = kernel_of(o, sub);
  Family fam = spec.family;
  verify::ScanResult r;
  if (o.type == "eig") {
    r = verify::eig_ratio_scan(fam, o.index, o.grid, spec.a, o.n, o.jobs);
  } else if (o.type == "det") {
    if (!given(sub, "chi")) throw UsageError("--chi is required for det scans");
    r = verify::det_ratio_scan(fam, o.chi, o.grid, spec.a, o.n, o.jobs);
  } else if (o.type == "stokes") {
    r = verify::stokes_crossing_scan(fam, o.q, o.grid, spec.a, o.n, o.jobs);
  } else {
    r = verify::gap_constant_scan(fam, o.grid, spec.a, o.n, o.jobs);
  }

  Output out;
  out.table.columns = {"t", "s", "v", "numeric", "predicted", "rel_error", "valid", "note"};
  double worst = 0.0;
  bool all_valid = true;
  for (std::size_t k = 0; k < r.size(); ++k) {
    json t = num(r.grid[k]);
    if (r.kind == "gap") {
      std::optional<double> tv = IntervalSpec(fam, r.s[k]).t();
      t = opt_num(tv);
    }
    json v = (r.kind == "det" || r.kind == "stokes") && k < r.v.size() ? num(r.v[k]) : json(nullptr);
    out.table.add({t, num(r.s[k]), v, num(r.numeric[k]), num(r.predicted[k]), num(r.rel_error[k]),
                   static_cast<bool>(r.valid[k]), r.notes[k]});
    if (r.valid[k]) worst = std::max(worst, r.rel_error[k]);
    all_valid = all_valid && r.valid[k];
  }
  out.summary["kind"] = r.kind;
  out.summary["kernel"] = family_name(fam);
  out.summary["a"] = r.a;
  out.summary["index"] = r.index;
  if (r.kind == "det") {
    out.summary["chi"] = r.chi;
    out.summary["p"] = r.p;
    out.summary["exponent"] = r.exponent;
  }
  out.summary["n"] = r.n;
  out.summary["max_rel_error"] = worst;
  out.summary["all_valid"] = all_valid;
  out.summary["fitted_constant"] = opt_num(r.fitted_constant);
  out.summary["fitted_slope"] = opt_num(r.fitted_slope);
  if (o.timings) out.summary["seconds"] = r.seconds;
  return out;
}

Output cmd_verify(const Opts& o, std::ostream& err) {
  verify::AcceptanceOptions ao;
  ao.jobs = o.jobs;
  ao.perturb = o.perturb;
  ao.n = o.n;
  std::vector<int> ids = o.only;
  if (ids.empty())
    for (int i = 1; i <= verify::kCriterionCount; ++i) ids.push_back(i);

  Output out;
  out.table.columns = {"id", "title", "pass", "detail"};
  if (o.timings) out.table.columns.push_back("seconds");
  json metrics = json::object();
  int passed = 0;
  for (int id : ids) {
    verify::CriterionResult r = verify::run_criterion(id, ao);
    err << verify::format_line(r) << '\n' << std::flush;
    std::vector<json> row = {r.id, r.title, r.pass, r.detail};
    if (o.timings) row.push_back(r.seconds);
    out.table.add(std::move(row));
    json m = json::object();
    for (const auto& mt : r.metrics) m[mt.name] = num(mt.value);
    metrics[std::to_string(r.id)] = std::move(m);
    passed += r.pass;
  }
  int failed = static_cast<int>(ids.size()) - passed;
  out.summary["passed"] = passed;
  out.summary["failed"] = failed;
  out.summary["all_pass"] = failed == 0;
  out.summary["metrics"] = std::move(metrics);
  out.exit_code = failed == 0 ? kOk : kVerifyFailed;
  return out;
}

int execute(App& a, std::ostream& out, std::ostream& err) {
  CLI::App* sub = chosen(a);
  const Opts& o = a.o;
#ifdef _OPENMP
  omp_set_num_threads(std::max(1, o.jobs));
#endif
  Output res;
  if (sub == a.spectrum) res = cmd_spectrum(o, sub);
  else if (sub == a.det) res = cmd_det(o, sub);
  else if (sub == a.asymp) res = cmd_asymp(o, sub);
  else if (sub == a.scan) res = cmd_scan(o, sub);
  else res = cmd_verify(o, err);

  std::ofstream file;
  std::ostream* dst = &out;
  if (!o.output.empty()) {
    file.open(o.output, std::ios::binary);
    if (!file) throw UsageError("cannot write " + o.output);
    dst = &file;
  }
  if (o.format == "json") write_json(*dst, config_echo(sub), res.table, res.summary);
  else write_csv(*dst, res.table);
  dst->flush();
  return res.exit_code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  auto parse = [](App& a, std::vector<std::string> v) {
    std::reverse(v.begin(), v.end());
    a.app.parse(v);
  };

  std::unique_ptr<App> a = build_app();
  try {
    parse(*a, args);
    CLI::App* sub = chosen(*a);
    if (sub != nullptr && !a->o.config.empty()) {
      std::vector<std::string> merged = args;
      merge_config(a->o.config, sub, merged);
      a = build_app();
      parse(*a, merged);
    }
  } catch (const CLI::CallForHelp& e) {
    return a->app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return a->app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    a->app.exit(e, out, err);
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    return execute(*a, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace gapspec::cli
