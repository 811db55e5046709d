// Compares the OpenMP kernels against the serial reference implementations on
// random data: wall time, speedup, and the largest observed disagreement.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracvar/dynamics.hpp"
#include "fracvar/noether.hpp"
#include "fracvar/reference.hpp"

namespace {

using fracvar::FracOrder;
using fracvar::Grid;
using fracvar::SampledSignal;
using fracvar::Trajectory;

double time_ms(const std::function<void()>& body, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

void report(const char* name, int n, int d, double parallel_ms, double serial_ms,
            double max_diff) {
  std::printf("%-18s N=%-6d d=%d  parallel %9.3f ms  serial %9.3f ms  speedup %5.2fx  "
              "max_diff %.3g\n",
              name, n, d, parallel_ms, serial_ms, serial_ms / parallel_ms, max_diff);
}

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) return std::nan("");
  double worst = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double diff = std::fabs(x[i] - y[i]);
    if (std::isnan(diff)) return diff;
    worst = std::max(worst, diff);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 2000;
  int dim = 2;
  int reps = 3;
  double alpha_value = 0.5;
  CLI::App app{"fracvar kernel benchmark"};
  app.add_option("--n", n, "grid steps")->check(CLI::Range(2, 200000));
  app.add_option("--d", dim, "state dimension")->check(CLI::Range(1, 64));
  app.add_option("--reps", reps, "repetitions, best time kept")->check(CLI::Range(1, 100));
  app.add_option("--alpha", alpha_value, "fractional order");
  CLI11_PARSE(app, argc, argv);

  const Grid grid(0.0, 1.0, n);
  const FracOrder alpha(alpha_value);
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  Trajectory q(grid, dim);
  for (double& v : q.values) v = unit(rng);
  SampledSignal f(grid, dim, 0, n);
  SampledSignal g(grid, dim, 1, n);
  for (double& v : f.values) v = unit(rng);
  for (double& v : g.values) v = unit(rng);
  const fracvar::Lagrangian lagrangian = fracvar::quadratic_lagrangian();

  {
    SampledSignal out_p, out_s;
    const double pms = time_ms([&] { out_p = fracvar::delta_minus(q, alpha); }, reps);
    const double sms = time_ms([&] { out_s = fracvar::reference::delta_minus(q, alpha.value); },
                               reps);
    report("delta_minus", n, dim, pms, sms, max_abs_diff(out_p.values, out_s.values));
  }
  {
    fracvar::ELResidual out_p, out_s;
    const double pms = time_ms([&] { out_p = fracvar::el_residual(lagrangian, q, alpha); }, reps);
    const double sms =
        time_ms([&] { out_s = fracvar::reference::el_residual(lagrangian, q, alpha.value); },
                reps);
    report("el_residual", n, dim, pms, sms, max_abs_diff(out_p.values, out_s.values));
  }
  {
    std::vector<double> out_p, out_s;
    const double pms = time_ms([&] { out_p = fracvar::conserved_quantity(f, g, alpha); }, reps);
    const double sms = time_ms(
        [&] { out_s = fracvar::reference::conserved_quantity_streaming(f, g, alpha.value); },
        reps);
    report("conserved", n, dim, pms, sms, max_abs_diff(out_p, out_s));
  }
  {
    // The dense-matrix reference is cubic; keep it to a modest size.
    const int n_small = std::min(n, 400);
    const Grid small(0.0, 1.0, n_small);
    SampledSignal fs(small, dim, 0, n_small);
    SampledSignal gs(small, dim, 1, n_small);
    for (double& v : fs.values) v = unit(rng);
    for (double& v : gs.values) v = unit(rng);
    std::vector<double> out_p, out_s;
    const double pms = time_ms([&] { out_p = fracvar::conserved_quantity(fs, gs, alpha); }, reps);
    const double sms = time_ms(
        [&] { out_s = fracvar::reference::conserved_quantity_matrices(fs, gs, alpha.value); },
        reps);
    report("conserved_dense", n_small, dim, pms, sms, max_abs_diff(out_p, out_s));
  }
  return 0;
}
