#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hierenv/measures.hpp"

namespace hierenv {

// Sweepable scalar parameters of ModelParams.
enum class SweepParam { Kappa, OmegaC, Kappa0 };

SweepParam sweep_param_from_name(const std::string& name);
std::string to_string(SweepParam p);
ModelParams with_param(ModelParams base, SweepParam p, double value);

struct AxisSpec {
  SweepParam param = SweepParam::Kappa;
  double min = 0.0;
  double max = 3.0;
  int count = 121;
};

struct Thresholds {
  double eps_nm = 1e-6;
  double eps_qsl = 1e-6;
};

struct SweepSpec {
  ModelParams base;
  SolverConfig solver;
  AxisSpec axis1;
  std::optional<AxisSpec> axis2;
  Thresholds thresholds;
};

enum class NmLabel { Markovian, NonMarkovian };
enum class QslLabel { Speedup, NoSpeedup, Degenerate };

std::string to_string(NmLabel l);
std::string to_string(QslLabel l);

struct SweepPoint {
  double x = 0.0;                 // axis1 value
  double y = 0.0;                 // axis2 value (0 for 1-D sweeps)
  MeasureReport report;
  NmLabel nm = NmLabel::Markovian;
  QslLabel qsl = QslLabel::NoSpeedup;
  bool failed = false;
  std::string error;
};

// Row-major over axis1 then axis2: index = i1 * axis2.count + i2.
struct SweepResult {
  SweepSpec spec;
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;  // {0} for 1-D sweeps
  std::vector<SweepPoint> points;

  bool one_dimensional() const { return axis2_values.size() == 1; }
};

void validate(const SweepSpec& spec);

// workers <= 0 picks the OpenMP default; workers == 1 is the serial
// reference path. Per-point failures are captured in the cell, never thrown.
SweepResult run_sweep(const SweepSpec& spec, int workers = 0);
SweepResult run_sweep_serial(const SweepSpec& spec);

class NoCrossoverInBracket : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CrossoverPredicate { NmOnset, SpeedupOnset };

struct CrossoverResult {
  std::string parameter;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double critical = 0.0;
  double tol = 0.0;
  bool label_lo = false;  // predicate value at the bracket ends
  bool label_hi = false;
};

CrossoverResult find_crossover(const ModelParams& base, const SolverConfig& solver,
                               SweepParam parameter, double lo, double hi,
                               CrossoverPredicate predicate, double tol,
                               const Thresholds& thresholds = {});

struct LabelInterval {
  int first = 0;  // inclusive grid indices
  int last = 0;
  NmLabel label = NmLabel::Markovian;
};

// Run-length encoding of the NM labels of a 1-D sweep.
std::vector<LabelInterval> multi_interval_detection(const SweepResult& curve);

}  // namespace hierenv
