#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace hierenv {

using Complex = std::complex<double>;

// Second-layer reservoirs are either flat (rate gamma, time-local loss) or
// Lorentzian with coupling upsilon_n and inverse correlation time lambda_n.
struct Memoryless {
  double gamma = 1.0;
};

struct MemoryKeeping {
  double upsilon1 = 1.0;
  double upsilon2 = 1.0;
  double lambda1 = 0.1;
  double lambda2 = 0.1;
};

using SecondLayerEnv = std::variant<Memoryless, MemoryKeeping>;

// All rates are expressed in units of gamma0 and times in units of 1/gamma0;
// gamma0 itself is fixed at 1.
struct ModelParams {
  double kappa0 = 0.2;   // qubit <-> m0
  double kappa = 1.0;    // m0 <-> m1 and m0 <-> m2
  double omega_c = 0.0;  // m1 <-> m2
  double tau = 4.0;      // evolution horizon
  SecondLayerEnv env = Memoryless{};

  static constexpr double gamma0 = 1.0;

  bool memory_keeping() const { return std::holds_alternative<MemoryKeeping>(env); }
};

enum class RegimeLabel { Weak, Strong, Boundary };

class NonPhysicalParameter : public std::invalid_argument {
 public:
  NonPhysicalParameter(std::string field, const std::string& what)
      : std::invalid_argument(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Constant matrix M of the first-order linear system xdot = M x, together
// with the amplitude names of its basis. tracked is the number of leading
// components whose squared moduli enter the probability-norm bound (the
// auxiliary memory variables are excluded).
struct GeneratorMatrix {
  Eigen::MatrixXcd entries;
  std::vector<std::string> basis_labels;
  int tracked = 0;

  int dim() const { return static_cast<int>(entries.rows()); }
};

const ModelParams& validate(const ModelParams& params);
RegimeLabel classify_regime(const ModelParams& params);
GeneratorMatrix build_generator(const ModelParams& params);

std::string to_string(RegimeLabel label);

}  // namespace hierenv
