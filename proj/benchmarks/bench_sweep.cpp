// Times the serial reference sweep against the OpenMP path on the same grid
// and checks they agree.

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hierenv/sweep.hpp"

using namespace hierenv;

namespace {

double seconds(std::chrono::steady_clock::time_point t0,
               std::chrono::steady_clock::time_point t1) {
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 41;

  SweepSpec spec;
  spec.base.kappa0 = 0.2;
  spec.axis1 = {SweepParam::Kappa, 0.0, 3.0, n};
  spec.axis2 = AxisSpec{SweepParam::OmegaC, 0.0, 3.0, n};

  std::printf("grid %dx%d, tau=%g, %d dense points per trajectory\n", n, n,
              spec.base.tau, spec.solver.dense_grid_points);

  auto t0 = std::chrono::steady_clock::now();
  const SweepResult serial = run_sweep_serial(spec);
  auto t1 = std::chrono::steady_clock::now();
  const double t_serial = seconds(t0, t1);
  std::printf("serial reference: %8.3f s\n", t_serial);

#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  t0 = std::chrono::steady_clock::now();
  const SweepResult parallel = run_sweep(spec, threads);
  t1 = std::chrono::steady_clock::now();
  const double t_parallel = seconds(t0, t1);
  std::printf("openmp (%d threads): %6.3f s  speedup %.2fx\n", threads, t_parallel,
              t_serial / t_parallel);

  double max_dev = 0.0;
  for (std::size_t i = 0; i < serial.points.size(); ++i)
    max_dev = std::max(max_dev, std::abs(serial.points[i].report.n_blp -
                                         parallel.points[i].report.n_blp));
  std::printf("max |N_serial - N_openmp| = %.3g\n", max_dev);
  return max_dev == 0.0 ? 0 : 1;
}
