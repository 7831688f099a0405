#include "mhd1d/representation.hpp"

#include <algorithm>
#include <cmath>

#include "mhd1d/errors.hpp"
#include "mhd1d/solver.hpp"

namespace mhd1d {

namespace {

// int_0^1 exp(-alpha s) ds
double exp_moment0(double alpha) {
  if (alpha == 0.0) return 1.0;
  return -std::expm1(-alpha) / alpha;
}

// int_0^1 s exp(-alpha s) ds
double exp_moment1(double alpha) {
  if (std::abs(alpha) < 1e-2) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 0; k < 10; ++k) {
      sum += term / (k + 2);
      term *= -alpha / (k + 1);
    }
    return sum;
  }
  return (exp_moment0(alpha) - std::exp(-alpha)) / alpha;
}

std::vector<double> effective_flux(const State& s, const FluidParameters& p) {
  const std::size_t n = s.mesh().n_cells();
  std::vector<double> psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sigma = stress_sigma(s.tau[i], s.theta[i], s.velocity_gradient(i), p);
    psi[i] = flux_psi(sigma, s.b(i));
  }
  return psi;
}

}  // namespace

double mass_average(std::span<const double> w, const MassGrid& grid) {
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.n_cells(); ++i) sum += grid.width(i) * w[i];
  return sum;
}

std::vector<double> j_omega_cells(std::span<const double> w, const MassGrid& grid) {
  const std::size_t n = grid.n_cells();
  std::vector<double> out(n);
  double left = 0.0;  // integral up to node i
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = left + 0.5 * grid.width(i) * w[i];
    left += grid.width(i) * w[i];
  }
  const double mean = mass_average(out, grid);
  for (double& v : out) v -= mean;
  return out;
}

std::vector<double> j_omega_nodes(std::span<const double> w, const MassGrid& grid) {
  const std::size_t n = grid.n_cells();
  std::vector<double> out(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) acc += grid.dual_width(i) * w[i];
    out[i] = acc;
  }
  const double mean = mass_average(out, grid);
  for (double& v : out) v -= mean;
  return out;
}

std::vector<double> representation_residual(const Trajectory& traj) {
  if (traj.snapshots.size() < 2) {
    throw InsufficientData("representation residual needs at least two snapshots");
  }
  const auto& p = traj.params;
  const State& s0 = traj.snapshots.front();
  const std::size_t n = s0.mesh().n_cells();
  const auto a = s0.magnetic_invariant();

  auto source = [&](const State& s) {
    std::vector<double> k(n);
    for (std::size_t i = 0; i < n; ++i) {
      k[i] = (p.R * s.theta[i] + 0.5 * a[i] * a[i] / s.tau[i]) / p.mu;
    }
    return k;
  };

  std::vector<double> phi(n, 0.0);       // int_0^t psi
  std::vector<double> integral(n, 0.0);  // int_0^t K exp(-phi/mu)
  auto psi_prev = effective_flux(s0, p);
  auto k_prev = source(s0);

  std::vector<double> out;
  out.reserve(traj.snapshots.size());
  out.push_back(0.0);
  for (std::size_t k = 1; k < traj.snapshots.size(); ++k) {
    const State& s = traj.snapshots[k];
    const double dt = s.t - traj.snapshots[k - 1].t;
    const auto psi = effective_flux(s, p);
    const auto kk = source(s);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dphi = 0.5 * dt * (psi_prev[i] + psi[i]);
      const double alpha = dphi / p.mu;
      integral[i] += dt * std::exp(-phi[i] / p.mu) *
                     (k_prev[i] * exp_moment0(alpha) + (kk[i] - k_prev[i]) * exp_moment1(alpha));
      phi[i] += dphi;
      const double rhs = std::exp(phi[i] / p.mu) * (s0.tau[i] + integral[i]);
      worst = std::max(worst, std::abs(s.tau[i] - rhs));
    }
    out.push_back(worst);
    psi_prev = psi;
    k_prev = kk;
  }
  return out;
}

std::vector<double> flux_identity_residual(const Trajectory& traj) {
  if (traj.snapshots.size() < 2) {
    throw InsufficientData("flux identity residual needs at least two snapshots");
  }
  const auto& p = traj.params;
  const State& s0 = traj.snapshots.front();
  const MassGrid& grid = s0.mesh();
  const std::size_t n = grid.n_cells();

  std::vector<double> phi(n, 0.0);
  double mean_phi = 0.0;
  auto psi_prev = effective_flux(s0, p);
  std::vector<double> out{0.0};
  for (std::size_t k = 1; k < traj.snapshots.size(); ++k) {
    const State& s = traj.snapshots[k];
    const double dt = s.t - traj.snapshots[k - 1].t;
    const auto psi = effective_flux(s, p);
    for (std::size_t i = 0; i < n; ++i) phi[i] += 0.5 * dt * (psi_prev[i] + psi[i]);
    mean_phi += 0.5 * dt * (mass_average(psi_prev, grid) + mass_average(psi, grid));

    std::vector<double> du(s.u.size());
    for (std::size_t j = 0; j < du.size(); ++j) du[j] = s.u[j] - s0.u[j];
    const auto j_du = j_omega_nodes(du, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(phi[i] - j_du[i] - mean_phi));
    }
    out.push_back(worst);
    psi_prev = psi;
  }
  return out;
}

double unit_density_point(const State& state) {
  const MassGrid& grid = state.mesh();
  const std::size_t n = grid.n_cells();
  const auto& tau = state.tau;
  if (tau[0] == 1.0) return 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lo = tau[i] - 1.0;
    const double hi = tau[i + 1] - 1.0;
    if (lo == 0.0) return grid.center(i);
    if ((lo < 0.0) != (hi < 0.0) || hi == 0.0) {
      const double s = lo / (lo - hi);
      return grid.center(i) + s * (grid.center(i + 1) - grid.center(i));
    }
  }
  if (tau[n - 1] == 1.0) return grid.center(n - 1);
  // Unreachable when sum h tau = 1; fall back to the closest center.
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(tau[i] - 1.0) < std::abs(tau[best] - 1.0)) best = i;
  }
  return grid.center(best);
}

}  // namespace mhd1d
