#pragma once

#include <ostream>
#include <string>

#include "hierenv/sweep.hpp"

namespace hierenv {

// Shortest round-trippable decimal form of a double.
std::string format_double(double v);

// Columns: time, re_<label>/im_<label> per basis amplitude, survival.
void write_trajectory_csv(std::ostream& os, const AmplitudeTrajectory& traj);

// Columns: axis names, n_blp, n_pop, qsl_general, qsl_closed, survival_tau,
// degenerate, nm_label, qsl_label, error. 1-D sweeps drop the axis2 column.
void write_sweep_csv(std::ostream& os, const SweepResult& result);

// Compact grid form for plotting: one row per axis1 value of n_blp cells.
void write_grid_file(std::ostream& os, const SweepResult& result);

std::string measure_to_json(const MeasureReport& report);
std::string crossover_to_json(const CrossoverResult& result);

}  // namespace hierenv
