#pragma once

// Lagrangian -> Eulerian map. With tau piecewise constant per cell, the
// physical node positions are prefix sums x_j = sum_{i<j} h_i tau_i.

#include <vector>

#include "mhd1d/model.hpp"

namespace mhd1d {

struct EulerianProfile {
  double t = 0.0;
  std::vector<double> x_nodes;    // n+1 physical node positions
  std::vector<double> x_centers;  // n physical cell midpoints
  std::vector<double> rho;        // per cell, 1/tau
  std::vector<double> theta;      // per cell
  std::vector<double> b;          // per cell
  std::vector<double> u;          // per node

  double length() const { return x_nodes.back() - x_nodes.front(); }
};

std::vector<double> mass_to_space(const State& state);

EulerianProfile to_eulerian(const State& state);

/// Mass node coordinates rebuilt from a profile: y_j = sum_{i<j} rho_i dx_i.
std::vector<double> reconstruct_mass_nodes(const EulerianProfile& profile);

/// max_j |y_j(reconstructed) - y_j(grid)|.
double round_trip_error(const State& state);

}  // namespace mhd1d
