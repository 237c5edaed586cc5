#include "hierenv/sweep.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hierenv {

SweepParam sweep_param_from_name(const std::string& name) {
  if (name == "kappa") return SweepParam::Kappa;
  if (name == "omega_c") return SweepParam::OmegaC;
  if (name == "kappa0") return SweepParam::Kappa0;
  throw std::invalid_argument("unknown sweep parameter: " + name);
}

std::string to_string(SweepParam p) {
  switch (p) {
    case SweepParam::Kappa: return "kappa";
    case SweepParam::OmegaC: return "omega_c";
    case SweepParam::Kappa0: return "kappa0";
  }
  return "?";
}

std::string to_string(NmLabel l) {
  return l == NmLabel::Markovian ? "Markovian" : "NonMarkovian";
}

std::string to_string(QslLabel l) {
  switch (l) {
    case QslLabel::Speedup: return "Speedup";
    case QslLabel::NoSpeedup: return "NoSpeedup";
    case QslLabel::Degenerate: return "Degenerate";
  }
  return "?";
}

ModelParams with_param(ModelParams base, SweepParam p, double value) {
  switch (p) {
    case SweepParam::Kappa: base.kappa = value; break;
    case SweepParam::OmegaC: base.omega_c = value; break;
    case SweepParam::Kappa0: base.kappa0 = value; break;
  }
  return base;
}

namespace {

std::vector<double> axis_values(const AxisSpec& axis) {
  std::vector<double> v(axis.count);
  for (int i = 0; i < axis.count; ++i)
    v[i] = axis.min + (axis.max - axis.min) * i / (axis.count - 1);
  return v;
}

void validate_axis(const AxisSpec& axis) {
  if (!(axis.min < axis.max)) throw std::invalid_argument("axis: min must be < max");
  if (axis.count < 2) throw std::invalid_argument("axis: count must be >= 2");
}

SweepPoint evaluate_point(const SweepSpec& spec, double x, double y) {
  SweepPoint pt;
  pt.x = x;
  pt.y = y;
  try {
    ModelParams params = with_param(spec.base, spec.axis1.param, x);
    if (spec.axis2) params = with_param(params, spec.axis2->param, y);
    validate(params);
    const AmplitudeTrajectory traj =
        integrate(build_generator(params), spec.solver, params.tau);
    pt.report = measure(traj);
    pt.nm = pt.report.n_blp > spec.thresholds.eps_nm ? NmLabel::NonMarkovian
                                                     : NmLabel::Markovian;
    if (pt.report.degenerate)
      pt.qsl = QslLabel::Degenerate;
    else
      pt.qsl = pt.report.qsl_ratio_general < 1.0 - spec.thresholds.eps_qsl
                   ? QslLabel::Speedup
                   : QslLabel::NoSpeedup;
  } catch (const std::exception& e) {
    pt.failed = true;
    pt.error = e.what();
  }
  return pt;
}

}  // namespace

void validate(const SweepSpec& spec) {
  validate(spec.base);
  validate_axis(spec.axis1);
  if (spec.axis2) validate_axis(*spec.axis2);
  if (spec.thresholds.eps_nm <= 0.0 || spec.thresholds.eps_qsl <= 0.0)
    throw std::invalid_argument("thresholds must be > 0");
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
  validate(spec);
  SweepResult result;
  result.spec = spec;
  result.axis1_values = axis_values(spec.axis1);
  result.axis2_values = spec.axis2 ? axis_values(*spec.axis2) : std::vector<double>{0.0};

  const int n1 = static_cast<int>(result.axis1_values.size());
  const int n2 = static_cast<int>(result.axis2_values.size());
  result.points.resize(static_cast<std::size_t>(n1) * n2);

  // Each point writes only its own slot, so the assembled result is
  // independent of scheduling and worker count.
#ifdef _OPENMP
  if (workers <= 0) workers = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) collapse(2) num_threads(workers)
#endif
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      result.points[static_cast<std::size_t>(i) * n2 + j] =
          evaluate_point(spec, result.axis1_values[i], result.axis2_values[j]);
  return result;
}

SweepResult run_sweep_serial(const SweepSpec& spec) {
  validate(spec);
  SweepResult result;
  result.spec = spec;
  result.axis1_values = axis_values(spec.axis1);
  result.axis2_values = spec.axis2 ? axis_values(*spec.axis2) : std::vector<double>{0.0};
  const int n2 = static_cast<int>(result.axis2_values.size());
  result.points.reserve(result.axis1_values.size() * n2);
  for (double x : result.axis1_values)
    for (double y : result.axis2_values)
      result.points.push_back(evaluate_point(spec, x, y));
  return result;
}

CrossoverResult find_crossover(const ModelParams& base, const SolverConfig& solver,
                               SweepParam parameter, double lo, double hi,
                               CrossoverPredicate predicate, double tol,
                               const Thresholds& thresholds) {
  if (!(lo < hi)) throw std::invalid_argument("find_crossover: bracket must satisfy lo < hi");
  if (tol <= 0.0) throw std::invalid_argument("find_crossover: tol must be > 0");

  auto holds = [&](double value) {
    const ModelParams params = validate(with_param(base, parameter, value));
    const AmplitudeTrajectory traj =
        integrate(build_generator(params), solver, params.tau);
    if (predicate == CrossoverPredicate::NmOnset)
      return non_markovianity(traj) > thresholds.eps_nm;
    return qsl_general(traj) < 1.0 - thresholds.eps_qsl;
  };

  CrossoverResult result;
  result.parameter = to_string(parameter);
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.tol = tol;
  result.label_lo = holds(lo);
  result.label_hi = holds(hi);
  if (result.label_lo == result.label_hi)
    throw NoCrossoverInBracket("find_crossover: predicate does not change over [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]");

  double a = lo, b = hi;
  bool label_a = result.label_lo;
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (holds(mid) == label_a)
      a = mid;
    else
      b = mid;
  }
  result.bracket_lo = a;
  result.bracket_hi = b;
  result.critical = 0.5 * (a + b);
  return result;
}

std::vector<LabelInterval> multi_interval_detection(const SweepResult& curve) {
  if (!curve.one_dimensional())
    throw std::invalid_argument("multi_interval_detection: expects a 1-D sweep");
  std::vector<LabelInterval> intervals;
  for (int i = 0; i < static_cast<int>(curve.points.size()); ++i) {
    const NmLabel label = curve.points[i].nm;
    if (intervals.empty() || intervals.back().label != label)
      intervals.push_back({i, i, label});
    else
      intervals.back().last = i;
  }
  return intervals;
}

}  // namespace hierenv
