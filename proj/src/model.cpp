#include "hierenv/model.hpp"

namespace hierenv {

namespace {

void require(bool ok, const char* field, const std::string& msg) {
  if (!ok) throw NonPhysicalParameter(field, "non-physical parameter " + std::string(field) + ": " + msg);
}

}  // namespace

const ModelParams& validate(const ModelParams& params) {
  require(params.kappa0 >= 0.0, "kappa0", "rate must be >= 0");
  require(params.kappa >= 0.0, "kappa", "rate must be >= 0");
  require(params.omega_c >= 0.0, "omega_c", "rate must be >= 0");
  require(params.tau > 0.0, "tau", "evolution horizon must be > 0");
  if (const auto* m = std::get_if<Memoryless>(&params.env)) {
    require(m->gamma >= 0.0, "gamma", "rate must be >= 0");
  } else {
    const auto& mk = std::get<MemoryKeeping>(params.env);
    require(mk.upsilon1 >= 0.0, "upsilon1", "rate must be >= 0");
    require(mk.upsilon2 >= 0.0, "upsilon2", "rate must be >= 0");
    require(mk.lambda1 > 0.0, "lambda1", "correlation time must be finite (lambda > 0)");
    require(mk.lambda2 > 0.0, "lambda2", "correlation time must be finite (lambda > 0)");
  }
  return params;
}

RegimeLabel classify_regime(const ModelParams& params) {
  const double threshold = ModelParams::gamma0 / 4.0;
  if (params.kappa0 < threshold) return RegimeLabel::Weak;
  if (params.kappa0 > threshold) return RegimeLabel::Strong;
  return RegimeLabel::Boundary;
}

std::string to_string(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::Weak: return "weak";
    case RegimeLabel::Strong: return "strong";
    case RegimeLabel::Boundary: return "boundary";
  }
  return "?";
}

GeneratorMatrix build_generator(const ModelParams& params) {
  const Complex mi(0.0, -1.0);  // -i
  const double g0 = ModelParams::gamma0;
  const double k0 = params.kappa0;
  const double k = params.kappa;
  const double om = params.omega_c;

  GeneratorMatrix gen;
  if (const auto* env = std::get_if<Memoryless>(&params.env)) {
    const double g = env->gamma;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 1) = mi * k0;
    m(1, 0) = mi * k0;
    m(1, 1) = -g0 / 2.0;
    m(1, 2) = mi * k;
    m(1, 3) = mi * k;
    m(2, 1) = mi * k;
    m(2, 2) = -g / 2.0;
    m(2, 3) = mi * om;
    m(3, 1) = mi * k;
    m(3, 2) = mi * om;
    m(3, 3) = -g / 2.0;
    gen.entries = std::move(m);
    gen.basis_labels = {"a", "c0", "c1", "c2"};
    gen.tracked = 4;
  } else {
    const auto& me = std::get<MemoryKeeping>(params.env);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(6, 6);
    m(0, 1) = mi * k0;
    m(1, 0) = mi * k0;
    m(1, 1) = -g0 / 2.0;
    m(1, 2) = mi * k;
    m(1, 3) = mi * k;
    // c1, c2 couple to the auxiliary variables z_n carrying the memory
    // integral; zdot_n = (upsilon_n lambda_n / 2) c_n - lambda_n z_n is the
    // exact ODE form of the exponential-kernel convolution.
    m(2, 1) = mi * k;
    m(2, 3) = mi * om;
    m(2, 4) = -1.0;
    m(3, 1) = mi * k;
    m(3, 2) = mi * om;
    m(3, 5) = -1.0;
    m(4, 2) = me.upsilon1 * me.lambda1 / 2.0;
    m(4, 4) = -me.lambda1;
    m(5, 3) = me.upsilon2 * me.lambda2 / 2.0;
    m(5, 5) = -me.lambda2;
    gen.entries = std::move(m);
    gen.basis_labels = {"h", "c0", "c1", "c2", "z1", "z2"};
    gen.tracked = 4;
  }
  return gen;
}

}  // namespace hierenv
