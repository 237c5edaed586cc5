#include "hierenv/measures.hpp"

#include <algorithm>
#include <cmath>

namespace hierenv {

QubitDensity QubitDensity::excited() {
  QubitDensity q;
  q.rho << 1, 0, 0, 0;
  return q;
}

QubitDensity QubitDensity::ground() {
  QubitDensity q;
  q.rho << 0, 0, 0, 1;
  return q;
}

QubitDensity QubitDensity::plus() {
  QubitDensity q;
  q.rho << 0.5, 0.5, 0.5, 0.5;
  return q;
}

QubitDensity QubitDensity::minus() {
  QubitDensity q;
  q.rho << 0.5, -0.5, -0.5, 0.5;
  return q;
}

QubitDensity QubitDensity::from_bloch(double x, double y, double z) {
  QubitDensity q;
  q.rho(0, 0) = 0.5 * (1.0 + z);
  q.rho(1, 1) = 0.5 * (1.0 - z);
  q.rho(0, 1) = 0.5 * Complex(x, -y);
  q.rho(1, 0) = 0.5 * Complex(x, y);
  return q;
}

bool QubitDensity::valid(double tol) const {
  if (std::abs(rho(0, 1) - std::conj(rho(1, 0))) > tol) return false;
  if (std::abs(rho(0, 0).imag()) > tol || std::abs(rho(1, 1).imag()) > tol) return false;
  if (std::abs(rho.trace() - Complex(1.0)) > tol) return false;
  // Hermitian 2x2 eigenvalues in closed form.
  const double tr = rho.trace().real();
  const double det = (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return tr / 2.0 - disc >= -tol;
}

QubitDensity reduced_state(Complex survival_amp, const QubitDensity& rho0) {
  if (!rho0.valid()) throw InvalidState("reduced_state: rho0 is not a valid qubit state");
  const double p = std::norm(survival_amp);
  if (p > 1.0 + 1e-12)
    throw InvalidState("reduced_state: |survival_amp| exceeds 1");
  QubitDensity out;
  out.rho(0, 0) = rho0.rho(0, 0).real() * p;
  out.rho(0, 1) = rho0.rho(0, 1) * std::conj(survival_amp);
  out.rho(1, 0) = rho0.rho(1, 0) * survival_amp;
  out.rho(1, 1) = rho0.rho(1, 1) + rho0.rho(0, 0).real() * (1.0 - p);
  return out;
}

double trace_distance(const QubitDensity& r1, const QubitDensity& r2) {
  const Eigen::Matrix2cd d = r1.rho - r2.rho;
  const double tr = d.trace().real();
  const double det = (d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0)).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  const double l1 = tr / 2.0 + disc;
  const double l2 = tr / 2.0 - disc;
  return 0.5 * (std::abs(l1) + std::abs(l2));
}

double rho_dot_opnorm(Complex a, Complex adot, const QubitDensity& rho0) {
  const double dp = 2.0 * (std::conj(a) * adot).real();
  Eigen::Matrix2cd m;
  m(0, 0) = rho0.rho(0, 0).real() * dp;
  m(0, 1) = rho0.rho(0, 1) * std::conj(adot);
  m(1, 0) = rho0.rho(1, 0) * adot;
  m(1, 1) = -rho0.rho(0, 0).real() * dp;
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
  return svd.singularValues()(0);
}

namespace {

// Cubic Hermite interpolant of the qubit amplitude on one grid cell, with the
// exact endpoint derivatives from the stored right-hand sides.
struct HermiteCell {
  double t0, h;
  Complex p0, p1, m0, m1;

  Complex value(double t) const {
    const double u = (t - t0) / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * p0 + h * (u3 - 2 * u2 + u) * m0 +
           (-2 * u3 + 3 * u2) * p1 + h * (u3 - u2) * m1;
  }
  Complex deriv(double t) const {
    const double u = (t - t0) / h;
    const double u2 = u * u;
    return ((6 * u2 - 6 * u) * (p0 - p1) + h * (3 * u2 - 4 * u + 1) * m0 +
            h * (3 * u2 - 2 * u) * m1) /
           h;
  }
  // |a| d|a|/dt; its sign changes mark extrema of |a| and zeros of a.
  double slope_indicator(double t) const {
    return (std::conj(value(t)) * deriv(t)).real();
  }
};

HermiteCell cell_at(const AmplitudeTrajectory& traj, std::size_t k) {
  return HermiteCell{traj.times[k], traj.times[k + 1] - traj.times[k],
                     traj.states[k](0), traj.states[k + 1](0), traj.derivs[k](0),
                     traj.derivs[k + 1](0)};
}

std::size_t cell_index(const AmplitudeTrajectory& traj, double t) {
  auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t);
  std::size_t k = static_cast<std::size_t>(it - traj.times.begin());
  if (k > 0) --k;
  return std::min(k, traj.size() - 2);
}

constexpr double kTimeTol = 1e-10;

}  // namespace

double survival_at(const AmplitudeTrajectory& traj, double t) {
  const std::size_t k = cell_index(traj, t);
  if (t == traj.times[k]) return traj.survival[k];
  if (t == traj.times[k + 1]) return traj.survival[k + 1];
  return std::abs(cell_at(traj, k).value(t));
}

std::vector<double> survival_extrema(const AmplitudeTrajectory& traj) {
  std::vector<double> out;
  if (traj.size() < 2) return out;
  auto indicator = [&](std::size_t k) {
    return (std::conj(traj.states[k](0)) * traj.derivs[k](0)).real();
  };
  double g_prev = indicator(0);
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const double g_next = indicator(k + 1);
    if ((g_prev < 0.0 && g_next > 0.0) || (g_prev > 0.0 && g_next < 0.0)) {
      const HermiteCell cell = cell_at(traj, k);
      double lo = traj.times[k], hi = traj.times[k + 1];
      double g_lo = g_prev;
      while (hi - lo > kTimeTol) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = cell.slope_indicator(mid);
        if ((g_lo < 0.0) == (g_mid < 0.0)) {
          lo = mid;
          g_lo = g_mid;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    } else if (g_next == 0.0 && g_prev != 0.0 && k + 2 < traj.size()) {
      // Extremum exactly on a grid point.
      const double g_after = indicator(k + 2);
      if ((g_prev < 0.0) != (g_after < 0.0) && g_after != 0.0)
        out.push_back(traj.times[k + 1]);
    }
    if (g_next != 0.0) g_prev = g_next;
  }
  return out;
}

namespace {

struct BackflowSums {
  double n_amp = 0.0;   // sum of rises of |a|
  double n_pop = 0.0;   // sum of rises of |a|^2
  double tv_pop = 0.0;  // total variation of |a|^2
  std::vector<double> crossings;
};

BackflowSums backflow(const AmplitudeTrajectory& traj) {
  BackflowSums sums;
  sums.crossings = survival_extrema(traj);
  std::vector<double> edges;
  edges.reserve(sums.crossings.size() + 2);
  edges.push_back(traj.times.front());
  edges.insert(edges.end(), sums.crossings.begin(), sums.crossings.end());
  edges.push_back(traj.times.back());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double s0 = survival_at(traj, edges[i]);
    const double s1 = survival_at(traj, edges[i + 1]);
    if (s1 > s0) {
      sums.n_amp += s1 - s0;
      sums.n_pop += s1 * s1 - s0 * s0;
    }
    sums.tv_pop += std::abs(s1 * s1 - s0 * s0);
  }
  return sums;
}

constexpr double kDegenerateTol = 1e-14;

}  // namespace

double non_markovianity(const AmplitudeTrajectory& traj) { return backflow(traj).n_amp; }

double qsl_general(const AmplitudeTrajectory& traj, bool* degenerate) {
  const BackflowSums sums = backflow(traj);
  const double p_tau = traj.survival.back() * traj.survival.back();
  const double numer = 1.0 - p_tau;  // sin^2 of the Bures angle for rho0=|1><1|
  if (degenerate) *degenerate = false;
  if (sums.tv_pop < kDegenerateTol) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  return std::clamp(numer / sums.tv_pop, 0.0, 1.0);
}

double qsl_closed_form(const AmplitudeTrajectory& traj, bool* degenerate) {
  const BackflowSums sums = backflow(traj);
  const double p_tau = traj.survival.back() * traj.survival.back();
  const double numer = 1.0 - p_tau;
  const double denom = 2.0 * sums.n_pop + numer;
  if (degenerate) *degenerate = false;
  if (denom < kDegenerateTol) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  return std::clamp(numer / denom, 0.0, 1.0);
}

MeasureReport measure(const AmplitudeTrajectory& traj) {
  const BackflowSums sums = backflow(traj);
  MeasureReport report;
  report.n_blp = sums.n_amp;
  report.n_pop = sums.n_pop;
  report.survival_tau = traj.survival.back();
  report.crossing_times = sums.crossings;

  const double p_tau = report.survival_tau * report.survival_tau;
  const double numer = 1.0 - p_tau;
  if (sums.tv_pop < kDegenerateTol) {
    report.degenerate = true;
    report.qsl_ratio_general = 0.0;
    report.qsl_ratio_closed = 0.0;
  } else {
    report.qsl_ratio_general = std::clamp(numer / sums.tv_pop, 0.0, 1.0);
    report.qsl_ratio_closed = std::clamp(numer / (2.0 * sums.n_pop + numer), 0.0, 1.0);
  }
  return report;
}

}  // namespace hierenv
