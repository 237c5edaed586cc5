#pragma once

#include <stdexcept>
#include <vector>

#include "hierenv/dynamics.hpp"
#include "hierenv/model.hpp"

namespace hierenv {

class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// 2x2 density matrix of the qubit in the basis {|1>, |0>}.
struct QubitDensity {
  Eigen::Matrix2cd rho;

  static QubitDensity excited();                    // |1><1|
  static QubitDensity ground();                     // |0><0|
  static QubitDensity plus();                       // (|0>+|1>)/sqrt2 projector
  static QubitDensity minus();                      // (|0>-|1>)/sqrt2 projector
  static QubitDensity from_bloch(double x, double y, double z);

  bool valid(double tol = 1e-12) const;
};

struct MeasureReport {
  double n_blp = 0.0;             // backflow of |a|, the reported N
  double n_pop = 0.0;             // backflow of |a|^2, used by the closed form
  double qsl_ratio_general = 1.0;
  double qsl_ratio_closed = 1.0;
  double survival_tau = 1.0;
  bool degenerate = false;
  std::vector<double> crossing_times;  // sign changes of d|a|/dt
};

// Amplitude-damping image of rho0 under the channel with amplitude a(t).
QubitDensity reduced_state(Complex survival_amp, const QubitDensity& rho0);

// Half the trace norm of the difference.
double trace_distance(const QubitDensity& r1, const QubitDensity& r2);

double non_markovianity(const AmplitudeTrajectory& traj);
double qsl_general(const AmplitudeTrajectory& traj, bool* degenerate = nullptr);
double qsl_closed_form(const AmplitudeTrajectory& traj, bool* degenerate = nullptr);

// All measures in one pass, sharing the extrema detection.
MeasureReport measure(const AmplitudeTrajectory& traj);

// Largest singular value of d rho / dt under the channel, for arbitrary rho0.
// Generic route used by property tests against the analytic |d|a|^2/dt|.
double rho_dot_opnorm(Complex a, Complex adot, const QubitDensity& rho0);

// Refined times in (0, tau) where d|a|/dt changes sign.
std::vector<double> survival_extrema(const AmplitudeTrajectory& traj);

// Survival |a(t)| at an arbitrary time by cubic Hermite interpolation of the
// stored states and derivatives.
double survival_at(const AmplitudeTrajectory& traj, double t);

}  // namespace hierenv
