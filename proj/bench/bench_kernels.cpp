// Wall-time comparison of the serial reference kernels against the OpenMP
// ones: ensemble sweep, oracle feasibility scan, exact-EoF grid. Results are
// asserted bit-identical in tests/test_execution.cpp; this target only
// measures the speedup.
#include <chrono>
#include <cstdio>
#include <random>

#include "geof/ensemble.hpp"
#include "geof/eof.hpp"

using namespace geof;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_s(F&& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %9.3fs %9.3fs %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", max_threads());
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    SweepConfig cfg;
    cfg.n_states = 400;
    cfg.seed = 1;
    cfg.exec = Execution::serial;
    double vol = 0.0;
    const double ts = time_s([&] { vol += run_sweep(cfg).summary.mean_delta_minus; });
    cfg.exec = Execution::parallel;
    const double tp = time_s([&] { vol += run_sweep(cfg).summary.mean_delta_minus; });
    row("run_sweep n=400", ts, tp);
    (void)vol;
  }

  {
    // a moderately asymmetric entangled state keeps the oracle busy
    const StandardForm sf{2.4, 1.7, 1.5, -1.1};
    OracleGrid grid;
    grid.n_r = 800;
    grid.n_local = 241;
    grid.exec = Execution::serial;
    double vol = 0.0;
    const double ts = time_s([&] { vol += eof_oracle(sf, grid); });
    grid.exec = Execution::parallel;
    const double tp = time_s([&] { vol += eof_oracle(sf, grid); });
    row("eof_oracle dense grid", ts, tp);
    (void)vol;
  }

  {
    const StandardForm sf{2.4, 1.7, 1.5, -1.1};
    EofOptions opts;
    opts.grid_points = 2000000;
    opts.exec = Execution::serial;
    double vol = 0.0;
    const double ts = time_s([&] { vol += eof_exact(sf, opts).exact; });
    opts.exec = Execution::parallel;
    const double tp = time_s([&] { vol += eof_exact(sf, opts).exact; });
    row("eof_exact grid 2e6", ts, tp);
    (void)vol;
  }

  return 0;
}
