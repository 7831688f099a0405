#include "mhd1d/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "mhd1d/solver.hpp"

namespace mhd1d {

std::vector<double> face_theta_gradient(const State& state) {
  const MassGrid& grid = state.mesh();
  const std::size_t n = grid.n_cells();
  std::vector<double> g(n + 1, 0.0);
  for (std::size_t f = 1; f < n; ++f) {
    g[f] = (state.theta[f] - state.theta[f - 1]) / grid.dual_width(f);
  }
  return g;
}

double dissipation_rate(const State& state, const FluidParameters& params) {
  const MassGrid& grid = state.mesh();
  const std::size_t n = grid.n_cells();
  double thermal = 0.0;
  for (std::size_t f = 1; f < n; ++f) {
    const double gx = (state.theta[f] - state.theta[f - 1]) / grid.dual_width(f);
    const double tau_f = 0.5 * (state.tau[f - 1] + state.tau[f]);
    thermal += grid.dual_width(f) * gx * gx / (tau_f * state.theta[f - 1] * state.theta[f]);
  }
  double viscous = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ux = state.velocity_gradient(i);
    viscous += grid.width(i) * ux * ux / (state.tau[i] * state.theta[i]);
  }
  return params.kappa * thermal + params.mu * viscous;
}

double physical_entropy(const State& state, const FluidParameters& params) {
  const MassGrid& grid = state.mesh();
  double s = 0.0;
  for (std::size_t i = 0; i < grid.n_cells(); ++i) {
    s += grid.width(i) * (params.R * std::log(state.tau[i]) + params.cv * std::log(state.theta[i]));
  }
  return s;
}

double mechanical_energy(const State& state) {
  const MassGrid& grid = state.mesh();
  const auto a = state.magnetic_invariant();
  double e = 0.0;
  for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
    e += 0.5 * grid.dual_width(j) * state.u[j] * state.u[j];
  }
  for (std::size_t i = 0; i < grid.n_cells(); ++i) {
    e += 0.5 * grid.width(i) * a[i] * a[i] / state.tau[i];
  }
  return e;
}

DiagnosticRecord diagnostics(const State& state, double cum_dissipation,
                             const FluidParameters& params) {
  const MassGrid& grid = state.mesh();
  const auto a = state.magnetic_invariant();
  DiagnosticRecord r;
  r.t = state.t;
  r.dissipation_cum = cum_dissipation;
  r.tau_min = *std::min_element(state.tau.begin(), state.tau.end());
  r.tau_max = *std::max_element(state.tau.begin(), state.tau.end());
  r.theta_min = *std::min_element(state.theta.begin(), state.theta.end());
  for (std::size_t i = 0; i < grid.n_cells(); ++i) {
    const double h = grid.width(i);
    const double tau = state.tau[i];
    const double theta = state.theta[i];
    r.volume += h * tau;
    r.energy += h * (params.cv * theta + 0.5 * a[i] * a[i] / tau);
    r.entropy_fn += h * (params.R * (tau - std::log(tau) - 1.0) +
                         params.cv * (theta - std::log(theta) - 1.0));
  }
  double ul2 = 0.0;
  for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
    ul2 += grid.dual_width(j) * state.u[j] * state.u[j];
  }
  r.energy += 0.5 * ul2;
  r.u_l2 = std::sqrt(ul2);
  return r;
}

std::vector<DiagnosticRecord> diagnostics(const Trajectory& traj) {
  std::vector<DiagnosticRecord> out;
  out.reserve(traj.snapshots.size());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    out.push_back(diagnostics(traj.snapshots[k], traj.dissipation_cum[k], traj.params));
  }
  return out;
}

}  // namespace mhd1d
