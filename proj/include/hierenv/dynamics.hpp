#pragma once

#include <stdexcept>
#include <vector>

#include "hierenv/model.hpp"

namespace hierenv {

struct SolverConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double max_step = 0.0;  // 0 means no cap
  int dense_grid_points = 2001;
};

// Dense-output record of one amplitude evolution. states[k] is the full
// solution vector at times[k] in the generator basis, derivs[k] the exact
// right-hand side there, survival[k] = |states[k][0]| (the qubit excited
// amplitude modulus).
struct AmplitudeTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;
  std::vector<Eigen::VectorXcd> derivs;
  std::vector<double> survival;
  std::vector<std::string> basis_labels;
  int tracked = 0;

  std::size_t size() const { return times.size(); }
};

class StepSizeUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VariantMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) from x(0) = (1,0,...,0),
// sampled on a uniform grid of config.dense_grid_points times over [0, tau].
AmplitudeTrajectory integrate(const GeneratorMatrix& gen, const SolverConfig& config,
                              double tau);

// Oracle: x(t) = exp(M t) x(0) by scaling-and-squaring, evaluated per time.
AmplitudeTrajectory integrate_expm(const GeneratorMatrix& gen,
                                   const std::vector<double>& times);

// Oracle for the memory-keeping variant: direct trapezoidal quadrature of the
// convolution terms, Heun time stepping of the amplitude equations.
AmplitudeTrajectory integrate_volterra(const ModelParams& params, double dt, double tau);

}  // namespace hierenv
