#include "hierenv/io.hpp"

#include <charconv>

#include <json.hpp>

namespace hierenv {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_trajectory_csv(std::ostream& os, const AmplitudeTrajectory& traj) {
  os << "time";
  for (const auto& label : traj.basis_labels) os << ",re_" << label << ",im_" << label;
  os << ",survival\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << format_double(traj.times[k]);
    for (int i = 0; i < traj.states[k].size(); ++i)
      os << ',' << format_double(traj.states[k](i).real()) << ','
         << format_double(traj.states[k](i).imag());
    os << ',' << format_double(traj.survival[k]) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  const bool two_d = !result.one_dimensional();
  os << to_string(result.spec.axis1.param);
  if (two_d) os << ',' << to_string(result.spec.axis2->param);
  os << ",n_blp,n_pop,qsl_ratio_general,qsl_ratio_closed,survival_tau,degenerate,"
        "nm_label,qsl_label,error\n";
  for (const auto& pt : result.points) {
    os << format_double(pt.x);
    if (two_d) os << ',' << format_double(pt.y);
    if (pt.failed) {
      os << ",,,,,,,," << pt.error << '\n';
      continue;
    }
    os << ',' << format_double(pt.report.n_blp) << ',' << format_double(pt.report.n_pop)
       << ',' << format_double(pt.report.qsl_ratio_general) << ','
       << format_double(pt.report.qsl_ratio_closed) << ','
       << format_double(pt.report.survival_tau) << ','
       << (pt.report.degenerate ? 1 : 0) << ',' << to_string(pt.nm) << ','
       << to_string(pt.qsl) << ",\n";
  }
}

void write_grid_file(std::ostream& os, const SweepResult& result) {
  const std::size_t n2 = result.axis2_values.size();
  os << "# axis1=" << to_string(result.spec.axis1.param) << " ["
     << format_double(result.spec.axis1.min) << ',' << format_double(result.spec.axis1.max)
     << "] n=" << result.axis1_values.size() << '\n';
  if (!result.one_dimensional())
    os << "# axis2=" << to_string(result.spec.axis2->param) << " ["
       << format_double(result.spec.axis2->min) << ','
       << format_double(result.spec.axis2->max) << "] n=" << n2 << '\n';
  for (std::size_t i = 0; i < result.axis1_values.size(); ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      if (j) os << ' ';
      const auto& pt = result.points[i * n2 + j];
      os << (pt.failed ? "nan" : format_double(pt.report.n_blp));
    }
    os << '\n';
  }
}

std::string measure_to_json(const MeasureReport& report) {
  nlohmann::json j;
  j["n_blp"] = report.n_blp;
  j["n_pop"] = report.n_pop;
  j["qsl_ratio_general"] = report.qsl_ratio_general;
  j["qsl_ratio_closed"] = report.qsl_ratio_closed;
  j["survival_tau"] = report.survival_tau;
  j["degenerate"] = report.degenerate;
  j["crossing_times"] = report.crossing_times;
  return j.dump(2);
}

std::string crossover_to_json(const CrossoverResult& result) {
  nlohmann::json j;
  j["parameter"] = result.parameter;
  j["bracket_lo"] = result.bracket_lo;
  j["bracket_hi"] = result.bracket_hi;
  j["critical"] = result.critical;
  j["tol"] = result.tol;
  j["label_lo"] = result.label_lo;
  j["label_hi"] = result.label_hi;
  return j.dump(2);
}

}  // namespace hierenv
