// Serial reference assembly against the OpenMP path, and a det scan at 1 vs N threads.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <omp.h>

#include "gapspec/operator.hpp"
#include "gapspec/verify.hpp"

using namespace gapspec;

namespace {

double best_of(int repeat, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes = {100, 200, 400};
  int repeat = 3;
  int threads = omp_get_max_threads();
  CLI::App app{"assembly benchmark", "bench_assembly"};
  app.add_option("--n", sizes, "matrix sizes")->delimiter(',');
  app.add_option("--repeat", repeat)->check(CLI::PositiveNumber);
  app.add_option("--threads", threads)->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  omp_set_num_threads(threads);

  struct Case {
    const char* name;
    KernelSpec spec;
    double s;
  };
  const Case cases[] = {{"sine", KernelSpec::sine(), 8.0}, {"airy", KernelSpec::airy(), -4.0}, {"bessel", KernelSpec::bessel(0.5), 64.0}};

  bool identical = true;
  std::printf("threads %d\n%-7s %5s %12s %12s %8s %s\n", threads, "kernel", "n", "serial_s", "parallel_s", "speedup", "max_diff");
  for (const Case& c : cases) {
    for (int n : sizes) {
      Quadrature q = kernel_quadrature(c.spec, IntervalSpec(c.spec.family, c.s), n);
      Matrix ms, mp;
      double ts = best_of(repeat, [&] { ms = assemble_matrix(c.spec, q, Exec::Serial); });
      double tp = best_of(repeat, [&] { mp = assemble_matrix(c.spec, q, Exec::Parallel); });
      double diff = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) diff = std::max(diff, std::fabs(ms(i, j) - mp(i, j)));
      identical = identical && diff == 0.0;
      std::printf("%-7s %5d %12.6f %12.6f %8.2f %.3g\n", c.name, n, ts, tp, ts / tp, diff);
    }
  }

  std::vector<double> grid = {6, 7, 8, 9, 10, 11, 12, 13};
  verify::ScanResult r1, rn;
  double t1 = best_of(1, [&] { r1 = verify::det_ratio_scan(Family::Bessel, 0.5, grid, 0.0, 100, 1); });
  double tn = best_of(1, [&] { rn = verify::det_ratio_scan(Family::Bessel, 0.5, grid, 0.0, 100, threads); });
  bool same = r1.numeric == rn.numeric && r1.predicted == rn.predicted;
  identical = identical && same;
  std::printf("det scan, %zu points: 1 thread %.3fs, %d threads %.3fs, %s\n", grid.size(), t1, threads, tn,
              same ? "identical" : "DIFFERENT");
  return identical ? 0 : 1;
}
