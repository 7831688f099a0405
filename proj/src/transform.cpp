#include "mhd1d/transform.hpp"

#include <algorithm>
#include <cmath>

namespace mhd1d {

std::vector<double> mass_to_space(const State& state) {
  const MassGrid& grid = state.mesh();
  std::vector<double> x(grid.n_nodes(), 0.0);
  for (std::size_t i = 0; i < grid.n_cells(); ++i) {
    x[i + 1] = x[i] + grid.width(i) * state.tau[i];
  }
  return x;
}

EulerianProfile to_eulerian(const State& state) {
  const std::size_t n = state.mesh().n_cells();
  EulerianProfile p;
  p.t = state.t;
  p.x_nodes = mass_to_space(state);
  p.u = state.u;
  p.x_centers.resize(n);
  p.rho.resize(n);
  p.b.resize(n);
  p.theta = state.theta;
  for (std::size_t i = 0; i < n; ++i) {
    p.x_centers[i] = 0.5 * (p.x_nodes[i] + p.x_nodes[i + 1]);
    p.rho[i] = 1.0 / state.tau[i];
    p.b[i] = magnetic_field(state.magnetic_invariant()[i], state.tau[i]);
  }
  return p;
}

std::vector<double> reconstruct_mass_nodes(const EulerianProfile& profile) {
  std::vector<double> y(profile.x_nodes.size(), 0.0);
  for (std::size_t i = 0; i < profile.rho.size(); ++i) {
    y[i + 1] = y[i] + profile.rho[i] * (profile.x_nodes[i + 1] - profile.x_nodes[i]);
  }
  return y;
}

double round_trip_error(const State& state) {
  const auto y = reconstruct_mass_nodes(to_eulerian(state));
  double worst = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    worst = std::max(worst, std::abs(y[j] - state.mesh().node(j)));
  }
  return worst;
}

}  // namespace mhd1d
