#include "hierenv/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace hierenv {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// 5th-order minus embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

AmplitudeTrajectory make_traj(const GeneratorMatrix& gen, std::size_t n) {
  AmplitudeTrajectory traj;
  traj.basis_labels = gen.basis_labels;
  traj.tracked = gen.tracked;
  traj.times.reserve(n);
  traj.states.reserve(n);
  traj.derivs.reserve(n);
  traj.survival.reserve(n);
  return traj;
}

void record(AmplitudeTrajectory& traj, const Eigen::MatrixXcd& m, double t,
            const Eigen::VectorXcd& x) {
  traj.times.push_back(t);
  traj.states.push_back(x);
  traj.derivs.push_back(m * x);
  traj.survival.push_back(std::abs(x(0)));
}

}  // namespace

AmplitudeTrajectory integrate(const GeneratorMatrix& gen, const SolverConfig& config,
                              double tau) {
  if (tau <= 0.0) throw std::invalid_argument("integrate: tau must be > 0");
  if (config.rel_tol <= 0.0 || config.abs_tol <= 0.0)
    throw std::invalid_argument("integrate: tolerances must be > 0");
  if (config.dense_grid_points < 2)
    throw std::invalid_argument("integrate: dense_grid_points must be >= 2");

  const Eigen::MatrixXcd& m = gen.entries;
  const int dim = gen.dim();
  const int n_out = config.dense_grid_points;
  const double h_min = 1e-12 * tau;

  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
  x(0) = 1.0;

  auto traj = make_traj(gen, static_cast<std::size_t>(n_out));
  record(traj, m, 0.0, x);

  double t = 0.0;
  double h = std::min(1e-3 * tau, tau / (n_out - 1));
  if (config.max_step > 0.0) h = std::min(h, config.max_step);
  Eigen::VectorXcd k1 = m * x;  // FSAL
  Eigen::VectorXcd k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), xn(dim), err(dim);

  for (int j = 1; j < n_out; ++j) {
    const double t_out = tau * j / (n_out - 1);
    while (t < t_out) {
      bool clipped = t + h >= t_out;
      double hs = clipped ? t_out - t : h;
      k2 = m * (x + hs * (a21 * k1));
      k3 = m * (x + hs * (a31 * k1 + a32 * k2));
      k4 = m * (x + hs * (a41 * k1 + a42 * k2 + a43 * k3));
      k5 = m * (x + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      k6 = m * (x + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      xn = x + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      k7 = m * xn;
      err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double err_norm = 0.0;
      for (int i = 0; i < dim; ++i) {
        const double sc =
            config.abs_tol + config.rel_tol * std::max(std::abs(x(i)), std::abs(xn(i)));
        const double q = std::abs(err(i)) / sc;
        err_norm += q * q;
      }
      err_norm = std::sqrt(err_norm / dim);

      if (err_norm <= 1.0) {
        t = clipped ? t_out : t + hs;
        x.swap(xn);
        k1.swap(k7);
      }
      const double factor =
          std::clamp(0.9 * std::pow(std::max(err_norm, 1e-16), -0.2), 0.2, 5.0);
      double h_new = hs * factor;
      if (config.max_step > 0.0) h_new = std::min(h_new, config.max_step);
      if (h_new < h_min)
        throw StepSizeUnderflow("integrate: step size underflow at t=" + std::to_string(t));
      h = h_new;
    }
    record(traj, m, t_out, x);
  }
  return traj;
}

AmplitudeTrajectory integrate_expm(const GeneratorMatrix& gen,
                                   const std::vector<double>& times) {
  if (times.empty() || times.front() != 0.0)
    throw std::invalid_argument("integrate_expm: times must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw std::invalid_argument("integrate_expm: times must be strictly increasing");

  const Eigen::MatrixXcd& m = gen.entries;
  Eigen::VectorXcd x0 = Eigen::VectorXcd::Zero(gen.dim());
  x0(0) = 1.0;

  auto traj = make_traj(gen, times.size());
  for (double t : times) {
    Eigen::MatrixXcd e = (m * t).exp();
    record(traj, m, t, e * x0);
  }
  return traj;
}

AmplitudeTrajectory integrate_volterra(const ModelParams& params, double dt, double tau) {
  if (!params.memory_keeping())
    throw VariantMismatch("integrate_volterra: requires the memory-keeping variant");
  if (dt <= 0.0 || tau <= 0.0)
    throw std::invalid_argument("integrate_volterra: dt and tau must be > 0");

  const auto& env = std::get<MemoryKeeping>(params.env);
  const long n = std::max<long>(1, std::lround(tau / dt));
  const double h = tau / static_cast<double>(n);

  const Complex mi(0.0, -1.0);
  const double g0 = ModelParams::gamma0;
  const double k0 = params.kappa0;
  const double k = params.kappa;
  const double om = params.omega_c;

  // Kernel f_n(s) = (upsilon_n lambda_n / 2) exp(-lambda_n s); precompute the
  // decay powers so the convolution inner loop is a real-times-complex MAC.
  const double f10 = env.upsilon1 * env.lambda1 / 2.0;
  const double f20 = env.upsilon2 * env.lambda2 / 2.0;
  std::vector<double> decay1(n + 1), decay2(n + 1);
  for (long j = 0; j <= n; ++j) {
    decay1[j] = std::exp(-env.lambda1 * h * j);
    decay2[j] = std::exp(-env.lambda2 * h * j);
  }

  // History of c1, c2 for the convolution.
  std::vector<Complex> c1_hist(n + 1), c2_hist(n + 1);

  // Trapezoid quadrature of int_0^{t_k} f(t_k - t') c(t') dt' given the
  // history up to index k (inclusive).
  auto convolve = [h](const std::vector<Complex>& c, const std::vector<double>& decay,
                      double f0, long kk) -> Complex {
    if (kk == 0) return {};
    Complex acc = 0.5 * decay[kk] * c[0];
    for (long j = 1; j < kk; ++j) acc += decay[kk - j] * c[j];
    acc += 0.5 * c[kk];
    return f0 * h * acc;
  };

  using Vec4 = Eigen::Vector4cd;
  auto rhs = [&](const Vec4& v, Complex z1, Complex z2) -> Vec4 {
    Vec4 d;
    d(0) = mi * k0 * v(1);
    d(1) = -g0 / 2.0 * v(1) + mi * k0 * v(0) + mi * k * (v(2) + v(3));
    d(2) = mi * k * v(1) + mi * om * v(3) - z1;
    d(3) = mi * k * v(1) + mi * om * v(2) - z2;
    return d;
  };

  GeneratorMatrix gen = build_generator(params);
  auto traj = make_traj(gen, static_cast<std::size_t>(n + 1));

  Vec4 v = Vec4::Zero();
  v(0) = 1.0;
  c1_hist[0] = v(2);
  c2_hist[0] = v(3);

  auto record_point = [&](double t, const Vec4& vv, Complex z1, Complex z2) {
    Eigen::VectorXcd full(6);
    full << vv(0), vv(1), vv(2), vv(3), z1, z2;
    Vec4 d = rhs(vv, z1, z2);
    Eigen::VectorXcd dfull(6);
    dfull << d(0), d(1), d(2), d(3), f10 * vv(2) - env.lambda1 * z1,
        f20 * vv(3) - env.lambda2 * z2;
    traj.times.push_back(t);
    traj.states.push_back(full);
    traj.derivs.push_back(dfull);
    traj.survival.push_back(std::abs(vv(0)));
  };

  record_point(0.0, v, 0.0, 0.0);

  for (long kk = 0; kk < n; ++kk) {
    const Complex z1_k = convolve(c1_hist, decay1, f10, kk);
    const Complex z2_k = convolve(c2_hist, decay2, f20, kk);
    const Vec4 f1 = rhs(v, z1_k, z2_k);
    const Vec4 pred = v + h * f1;

    // Predicted end-of-step convolution: history scaled one step plus the
    // predicted endpoint contribution.
    c1_hist[kk + 1] = pred(2);
    c2_hist[kk + 1] = pred(3);
    const Complex z1_p = convolve(c1_hist, decay1, f10, kk + 1);
    const Complex z2_p = convolve(c2_hist, decay2, f20, kk + 1);

    const Vec4 f2 = rhs(pred, z1_p, z2_p);
    v = v + 0.5 * h * (f1 + f2);
    c1_hist[kk + 1] = v(2);
    c2_hist[kk + 1] = v(3);

    const Complex z1_n = convolve(c1_hist, decay1, f10, kk + 1);
    const Complex z2_n = convolve(c2_hist, decay2, f20, kk + 1);
    record_point(h * (kk + 1), v, z1_n, z2_n);
  }
  return traj;
}

}  // namespace hierenv
