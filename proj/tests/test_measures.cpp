#include <doctest.h>

#include <cmath>
#include <random>

#include "hierenv/measures.hpp"

using namespace hierenv;

namespace {

ModelParams memoryless_params(double kappa0, double kappa, double omega_c,
                              double tau = 4.0) {
  ModelParams p;
  p.kappa0 = kappa0;
  p.kappa = kappa;
  p.omega_c = omega_c;
  p.env = Memoryless{1.0};
  p.tau = tau;
  return p;
}

AmplitudeTrajectory trajectory(const ModelParams& p, int grid = 2001) {
  SolverConfig cfg;
  cfg.dense_grid_points = grid;
  return integrate(build_generator(p), cfg, p.tau);
}

QubitDensity random_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double x = u(rng), y = u(rng), z = u(rng);
  const double r = std::sqrt(x * x + y * y + z * z);
  if (r > 1.0) {
    x /= r;
    y /= r;
    z /= r;
  }
  return QubitDensity::from_bloch(x, y, z);
}

// Brute-force trace norm: Tr sqrt(M^dag M) via singular values.
double trace_distance_bruteforce(const QubitDensity& r1, const QubitDensity& r2) {
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(r1.rho - r2.rho);
  return 0.5 * svd.singularValues().sum();
}

AmplitudeTrajectory slice(const AmplitudeTrajectory& traj, std::size_t from,
                          std::size_t to) {
  AmplitudeTrajectory out;
  out.basis_labels = traj.basis_labels;
  out.tracked = traj.tracked;
  out.times.assign(traj.times.begin() + from, traj.times.begin() + to + 1);
  out.states.assign(traj.states.begin() + from, traj.states.begin() + to + 1);
  out.derivs.assign(traj.derivs.begin() + from, traj.derivs.begin() + to + 1);
  out.survival.assign(traj.survival.begin() + from, traj.survival.begin() + to + 1);
  return out;
}

}  // namespace

TEST_CASE("reduced_state identity and full-decay limits") {
  std::mt19937 rng(3);
  const QubitDensity rho0 = random_state(rng);
  const QubitDensity same = reduced_state(1.0, rho0);
  CHECK((same.rho - rho0.rho).cwiseAbs().maxCoeff() <= 1e-15);

  const QubitDensity decayed = reduced_state(0.0, QubitDensity::excited());
  CHECK((decayed.rho - QubitDensity::ground().rho).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("reduced_state populations follow |a|^2") {
  const QubitDensity out = reduced_state(0.6, QubitDensity::excited());
  CHECK(out.rho(0, 0).real() == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(out.rho(1, 1).real() == doctest::Approx(0.64).epsilon(1e-14));
  CHECK(std::abs(out.rho(0, 1)) == 0.0);
}

TEST_CASE("reduced_state rejects invalid input states") {
  QubitDensity bad;
  bad.rho << 0.7, 0, 0, 0.7;  // trace != 1
  CHECK_THROWS_AS(reduced_state(0.5, bad), InvalidState);
}

TEST_CASE("channel validity for random states and amplitudes") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> mag(0.0, 1.0), phase(0.0, 2.0 * M_PI);
  for (int i = 0; i < 500; ++i) {
    const Complex a = std::polar(mag(rng), phase(rng));
    const QubitDensity out = reduced_state(a, random_state(rng));
    CHECK(out.valid(1e-12));
  }
}

TEST_CASE("trace distance basics") {
  CHECK(trace_distance(QubitDensity::excited(), QubitDensity::excited()) == 0.0);
  CHECK(trace_distance(QubitDensity::excited(), QubitDensity::ground()) ==
        doctest::Approx(1.0).epsilon(1e-14));
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    const QubitDensity r1 = random_state(rng), r2 = random_state(rng);
    CHECK(trace_distance(r1, r2) ==
          doctest::Approx(trace_distance_bruteforce(r1, r2)).epsilon(1e-12));
  }
}

TEST_CASE("optimal-pair trace distance equals the survival amplitude") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto traj =
        trajectory(memoryless_params(0.25 * u01(rng), 3.0 * u01(rng), 3.0 * u01(rng)), 201);
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const Complex a = traj.states[k](0);
      const double d = trace_distance(reduced_state(a, QubitDensity::plus()),
                                      reduced_state(a, QubitDensity::minus()));
      CHECK(std::abs(d - traj.survival[k]) <= 1e-10);
    }
  }
}

TEST_CASE("non_markovianity is exactly zero for monotone decay") {
  CHECK(non_markovianity(trajectory(memoryless_params(0.2, 0.0, 0.0))) == 0.0);
}

TEST_CASE("non_markovianity is zero for frozen dynamics") {
  CHECK(non_markovianity(trajectory(memoryless_params(0.0, 1.0, 0.5))) == 0.0);
}

TEST_CASE("strong second-layer coupling produces backflow") {
  const auto traj = trajectory(memoryless_params(0.2, 2.4, 0.0));
  CHECK(non_markovianity(traj) > 1e-4);
}

TEST_CASE("backflow is additive across a split") {
  const auto traj = trajectory(memoryless_params(0.2, 2.4, 0.0));
  const double whole = non_markovianity(traj);
  for (std::size_t cut : {400u, 1000u, 1499u}) {
    const double parts = non_markovianity(slice(traj, 0, cut)) +
                         non_markovianity(slice(traj, cut, traj.size() - 1));
    CHECK(std::abs(whole - parts) <= 1e-10);
  }
}

TEST_CASE("qsl ratios: monotone decay has no speedup capacity") {
  const auto traj = trajectory(memoryless_params(0.2, 0.0, 0.0));
  bool degenerate = true;
  CHECK(qsl_general(traj, &degenerate) == 1.0);
  CHECK_FALSE(degenerate);
  CHECK(qsl_closed_form(traj) == 1.0);
}

TEST_CASE("qsl ratios: frozen dynamics flagged degenerate") {
  const auto traj = trajectory(memoryless_params(0.0, 1.0, 0.5));
  bool degenerate = false;
  CHECK(qsl_general(traj, &degenerate) == 0.0);
  CHECK(degenerate);
  degenerate = false;
  CHECK(qsl_closed_form(traj, &degenerate) == 0.0);
  CHECK(degenerate);
}

TEST_CASE("qsl speedup beyond the crossover") {
  const auto traj = trajectory(memoryless_params(0.2, 2.4, 0.0));
  CHECK(qsl_general(traj) < 1.0);
}

TEST_CASE("general and closed-form qsl evaluators agree") {
  const double kappas[] = {0.3, 1.0, 1.6, 2.0, 2.4, 3.0};
  for (double k : kappas) {
    const auto traj = trajectory(memoryless_params(0.2, k, 0.7));
    CHECK(std::abs(qsl_general(traj) - qsl_closed_form(traj)) <= 1e-8);
  }
}

TEST_CASE("closed form is strictly decreasing in the backflow") {
  // At fixed survival(tau), ratio = (1-p)/(2n+1-p).
  const double p = 0.4;
  double prev = 1.0;
  for (double n : {0.0, 0.01, 0.05, 0.2, 1.0, 5.0}) {
    const double ratio = (1.0 - p) / (2.0 * n + 1.0 - p);
    if (n > 0.0) CHECK(ratio < prev);
    prev = ratio;
  }
}

TEST_CASE("rho_dot operator norm reduces to |dp/dt| for the excited state") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Complex a(0.5 * u(rng), 0.5 * u(rng));
    const Complex adot(u(rng), u(rng));
    const double dp = std::abs(2.0 * (std::conj(a) * adot).real());
    CHECK(rho_dot_opnorm(a, adot, QubitDensity::excited()) ==
          doctest::Approx(dp).epsilon(1e-12));
  }
}

TEST_CASE("measure report is internally consistent") {
  const auto traj = trajectory(memoryless_params(0.2, 2.4, 0.0));
  const MeasureReport r = measure(traj);
  CHECK(r.n_blp == doctest::Approx(non_markovianity(traj)).epsilon(1e-14));
  CHECK(r.qsl_ratio_general == doctest::Approx(qsl_general(traj)).epsilon(1e-14));
  CHECK(r.qsl_ratio_closed == doctest::Approx(qsl_closed_form(traj)).epsilon(1e-14));
  CHECK(r.survival_tau == traj.survival.back());
  CHECK(r.n_blp >= 0.0);
  CHECK(r.qsl_ratio_general >= 0.0);
  CHECK(r.qsl_ratio_general <= 1.0);
  CHECK_FALSE(r.crossing_times.empty());
  for (double t : r.crossing_times) {
    CHECK(t > 0.0);
    CHECK(t < 4.0);
  }
}
