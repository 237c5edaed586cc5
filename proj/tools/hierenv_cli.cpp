#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hierenv/io.hpp"
#include "hierenv/svg.hpp"

namespace {

using namespace hierenv;

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitBracket = 4;

struct RunConfig {
  // model
  double kappa0 = 0.2;
  double kappa = 1.0;
  double omega_c = 0.0;
  double tau = 4.0;
  std::string env = "memoryless";
  double gamma = 1.0;
  double upsilon1 = 1.0, upsilon2 = 1.0;
  double lambda1 = 0.1, lambda2 = 0.1;
  // solver
  double rel_tol = 1e-10, abs_tol = 1e-10, max_step = 0.0;
  int dense_grid_points = 2001;
  // sweep
  std::string axis1 = "kappa";
  double axis1_min = 0.0, axis1_max = 3.0;
  int axis1_count = 121;
  std::string axis2;
  double axis2_min = 0.0, axis2_max = 3.0;
  int axis2_count = 121;
  double eps_nm = 1e-6, eps_qsl = 1e-6;
  // crossover
  std::string parameter = "kappa";
  double bracket_lo = 0.0, bracket_hi = 3.0;
  std::string predicate = "nm";
  double crossover_tol = 1e-3;
  // run
  int workers = 0;
  std::string output;
  bool plot = false;
};

ModelParams model_params(const RunConfig& c) {
  ModelParams p;
  p.kappa0 = c.kappa0;
  p.kappa = c.kappa;
  p.omega_c = c.omega_c;
  p.tau = c.tau;
  if (c.env == "memoryless")
    p.env = Memoryless{c.gamma};
  else if (c.env == "memory-keeping")
    p.env = MemoryKeeping{c.upsilon1, c.upsilon2, c.lambda1, c.lambda2};
  else
    throw NonPhysicalParameter("env", "env must be memoryless or memory-keeping");
  return p;
}

SolverConfig solver_config(const RunConfig& c) {
  return {c.rel_tol, c.abs_tol, c.max_step, c.dense_grid_points};
}

// Canonical key=value form: every key, fixed order, shortest round-trip
// number formatting. Re-ingesting the dump reproduces the run byte for byte.
std::string dump_config(const RunConfig& c) {
  std::ostringstream os;
  os << "kappa0=" << format_double(c.kappa0) << '\n'
     << "kappa=" << format_double(c.kappa) << '\n'
     << "omega_c=" << format_double(c.omega_c) << '\n'
     << "tau=" << format_double(c.tau) << '\n'
     << "env=" << c.env << '\n'
     << "gamma=" << format_double(c.gamma) << '\n'
     << "upsilon1=" << format_double(c.upsilon1) << '\n'
     << "upsilon2=" << format_double(c.upsilon2) << '\n'
     << "lambda1=" << format_double(c.lambda1) << '\n'
     << "lambda2=" << format_double(c.lambda2) << '\n'
     << "rel_tol=" << format_double(c.rel_tol) << '\n'
     << "abs_tol=" << format_double(c.abs_tol) << '\n'
     << "max_step=" << format_double(c.max_step) << '\n'
     << "dense_grid_points=" << c.dense_grid_points << '\n'
     << "axis1=" << c.axis1 << '\n'
     << "axis1_min=" << format_double(c.axis1_min) << '\n'
     << "axis1_max=" << format_double(c.axis1_max) << '\n'
     << "axis1_count=" << c.axis1_count << '\n'
     << "axis2=" << c.axis2 << '\n'
     << "axis2_min=" << format_double(c.axis2_min) << '\n'
     << "axis2_max=" << format_double(c.axis2_max) << '\n'
     << "axis2_count=" << c.axis2_count << '\n'
     << "eps_nm=" << format_double(c.eps_nm) << '\n'
     << "eps_qsl=" << format_double(c.eps_qsl) << '\n'
     << "parameter=" << c.parameter << '\n'
     << "bracket_lo=" << format_double(c.bracket_lo) << '\n'
     << "bracket_hi=" << format_double(c.bracket_hi) << '\n'
     << "predicate=" << c.predicate << '\n'
     << "crossover_tol=" << format_double(c.crossover_tol) << '\n'
     << "workers=" << c.workers << '\n'
     << "output=" << c.output << '\n'
     << "plot=" << (c.plot ? "true" : "false") << '\n';
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

std::string svg_path_for(const std::string& csv_path) {
  return std::filesystem::path(csv_path).replace_extension(".svg").string();
}

int cmd_simulate(const RunConfig& c) {
  const ModelParams params = validate(model_params(c));
  const auto traj = integrate(build_generator(params), solver_config(c), params.tau);
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  const std::string path = c.output.empty() ? "trajectory.csv" : c.output;
  write_file(path, csv.str());
  if (c.plot) {
    SvgSeries s{"survival", traj.times, traj.survival};
    write_file(svg_path_for(path), svg_curve({s}, "t", "|a(t)|"));
  }
  std::cerr << "wrote " << path << " (" << traj.size() << " rows)\n";
  return 0;
}

int cmd_measure(const RunConfig& c) {
  const ModelParams params = validate(model_params(c));
  const auto traj = integrate(build_generator(params), solver_config(c), params.tau);
  const std::string json = measure_to_json(measure(traj));
  std::cout << json << '\n';
  if (!c.output.empty()) write_file(c.output, json + "\n");
  return 0;
}

int cmd_crossover(const RunConfig& c) {
  const ModelParams params = validate(model_params(c));
  const CrossoverPredicate pred = c.predicate == "speedup"
                                      ? CrossoverPredicate::SpeedupOnset
                                      : CrossoverPredicate::NmOnset;
  if (c.predicate != "nm" && c.predicate != "speedup")
    throw NonPhysicalParameter("predicate", "predicate must be nm or speedup");
  const auto result = find_crossover(params, solver_config(c),
                                     sweep_param_from_name(c.parameter), c.bracket_lo,
                                     c.bracket_hi, pred, c.crossover_tol,
                                     {c.eps_nm, c.eps_qsl});
  const std::string json = crossover_to_json(result);
  std::cout << json << '\n';
  if (!c.output.empty()) write_file(c.output, json + "\n");
  return 0;
}

int cmd_phase(const RunConfig& c) {
  SweepSpec spec;
  spec.base = validate(model_params(c));
  spec.solver = solver_config(c);
  spec.axis1 = {sweep_param_from_name(c.axis1), c.axis1_min, c.axis1_max, c.axis1_count};
  if (!c.axis2.empty())
    spec.axis2 = AxisSpec{sweep_param_from_name(c.axis2), c.axis2_min, c.axis2_max,
                          c.axis2_count};
  spec.thresholds = {c.eps_nm, c.eps_qsl};

  const SweepResult result = run_sweep(spec, c.workers);

  std::ostringstream csv;
  write_sweep_csv(csv, result);
  const std::string path = c.output.empty() ? "phase.csv" : c.output;
  write_file(path, csv.str());

  std::ostringstream grid;
  write_grid_file(grid, result);
  const std::string grid_path =
      std::filesystem::path(path).replace_extension(".grid").string();
  write_file(grid_path, grid.str());

  if (c.plot) {
    if (result.one_dimensional()) {
      SvgSeries s{"n_blp", {}, {}};
      for (const auto& pt : result.points) {
        s.x.push_back(pt.x);
        s.y.push_back(pt.failed ? 0.0 : pt.report.n_blp);
      }
      write_file(svg_path_for(path), svg_curve({s}, to_string(spec.axis1.param), "N"));
    } else {
      std::vector<double> vals;
      vals.reserve(result.points.size());
      for (const auto& pt : result.points)
        vals.push_back(pt.failed ? std::nan("") : pt.report.n_blp);
      write_file(svg_path_for(path),
                 svg_heatmap(vals, static_cast<int>(result.axis1_values.size()),
                             static_cast<int>(result.axis2_values.size()), c.axis1_min,
                             c.axis1_max, c.axis2_min, c.axis2_max,
                             to_string(spec.axis1.param), to_string(spec.axis2->param),
                             c.eps_nm));
    }
  }
  std::cerr << "wrote " << path << " (" << result.points.size() << " points)\n";
  return 0;
}

int error_exit(int code, const std::string& type, const std::string& message,
               const std::string& field = "") {
  nlohmann::json j;
  j["error"] = type;
  j["message"] = message;
  if (!field.empty()) j["field"] = field;
  std::cerr << j.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level system in a two-layer hierarchical environment: "
               "amplitude dynamics, non-Markovianity and quantum-speed-limit sweeps"};
  app.fallthrough();

  RunConfig c;
  app.set_config("--config")->configurable(false);

  app.add_option("--kappa0", c.kappa0, "qubit <-> m0 coupling (units of gamma0)");
  app.add_option("--kappa", c.kappa, "m0 <-> m1/m2 coupling");
  app.add_option("--omega_c", c.omega_c, "m1 <-> m2 coupling");
  app.add_option("--tau", c.tau, "evolution horizon (units of 1/gamma0)");
  app.add_option("--env", c.env, "second-layer reservoirs: memoryless | memory-keeping");
  app.add_option("--gamma", c.gamma, "m1/m2 loss rate (memoryless)");
  app.add_option("--upsilon1", c.upsilon1, "m1 reservoir coupling (memory-keeping)");
  app.add_option("--upsilon2", c.upsilon2, "m2 reservoir coupling (memory-keeping)");
  app.add_option("--lambda1", c.lambda1, "m1 reservoir inverse correlation time");
  app.add_option("--lambda2", c.lambda2, "m2 reservoir inverse correlation time");
  app.add_option("--rel_tol", c.rel_tol, "integrator relative tolerance");
  app.add_option("--abs_tol", c.abs_tol, "integrator absolute tolerance");
  app.add_option("--max_step", c.max_step, "integrator step cap (0 = none)");
  app.add_option("--dense_grid_points", c.dense_grid_points, "dense output grid size");
  app.add_option("--axis1", c.axis1, "sweep axis 1 parameter: kappa | omega_c | kappa0");
  app.add_option("--axis1_min", c.axis1_min);
  app.add_option("--axis1_max", c.axis1_max);
  app.add_option("--axis1_count", c.axis1_count);
  app.add_option("--axis2", c.axis2, "sweep axis 2 parameter (empty = 1-D sweep)");
  app.add_option("--axis2_min", c.axis2_min);
  app.add_option("--axis2_max", c.axis2_max);
  app.add_option("--axis2_count", c.axis2_count);
  app.add_option("--eps_nm", c.eps_nm, "non-Markovianity floor");
  app.add_option("--eps_qsl", c.eps_qsl, "speedup floor");
  app.add_option("--parameter", c.parameter, "crossover scan parameter");
  app.add_option("--bracket_lo", c.bracket_lo);
  app.add_option("--bracket_hi", c.bracket_hi);
  app.add_option("--predicate", c.predicate, "crossover predicate: nm | speedup");
  app.add_option("--crossover_tol", c.crossover_tol);
  app.add_option("--workers", c.workers, "sweep worker count (0 = all cores)");
  app.add_option("--output", c.output, "output file path");
  app.add_flag("--plot", c.plot, "also write a static SVG plot");
  std::string dump_path;
  app.add_option("--dump-config", dump_path,
                 "write the effective configuration in canonical form and continue")
      ->configurable(false);

  auto* simulate = app.add_subcommand("simulate", "integrate and write the trajectory CSV");
  auto* measure_cmd = app.add_subcommand("measure", "emit the measure report as JSON");
  auto* crossover = app.add_subcommand("crossover", "bisect a crossover boundary");
  auto* phase = app.add_subcommand("phase", "run a 1-D or 2-D parameter sweep");
  app.require_subcommand(0, 1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!dump_path.empty()) write_file(dump_path, dump_config(c));
    if (simulate->parsed()) return cmd_simulate(c);
    if (measure_cmd->parsed()) return cmd_measure(c);
    if (crossover->parsed()) return cmd_crossover(c);
    if (phase->parsed()) return cmd_phase(c);
    if (dump_path.empty()) {
      std::cerr << app.help();
      return kExitValidation;
    }
    return 0;
  } catch (const NonPhysicalParameter& e) {
    return error_exit(kExitValidation, "NonPhysicalParameter", e.what(), e.field());
  } catch (const NoCrossoverInBracket& e) {
    return error_exit(kExitBracket, "NoCrossoverInBracket", e.what());
  } catch (const StepSizeUnderflow& e) {
    return error_exit(kExitSolver, "StepSizeUnderflow", e.what());
  } catch (const std::invalid_argument& e) {
    return error_exit(kExitValidation, "InvalidArgument", e.what());
  } catch (const std::exception& e) {
    return error_exit(1, "Error", e.what());
  }
}
