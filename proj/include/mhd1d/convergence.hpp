#pragma once

// Self-convergence on nested uniform grids n, 2n, 4n, ... The time step cap
// shrinks by 4 per level (dt ~ h^2); the viscous limit scales the same way.
// Fine solutions are restricted to the next coarser grid (cells by pair
// averages, nodes by injection) and compared in discrete L^2.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mhd1d/norms.hpp"
#include "mhd1d/solver.hpp"

namespace mhd1d {

struct ConvergenceRow {
  Field field = Field::Tau;
  double h_coarse = 0.0;
  double h_fine = 0.0;
  double error = 0.0;
  /// log2(previous error / error); absent on the first pair of a field.
  std::optional<double> order;
  /// This and every coarser difference of the field are exactly zero.
  bool exact = false;
};

using DataFactory = std::function<InitialData(const MassGrid&)>;

/// Throws ConfigError("convergence.levels") unless there are at least three
/// levels, each exactly twice the previous.
void check_ladder(const std::vector<std::size_t>& cells);

std::vector<double> restrict_cells(std::span<const double> fine);
std::vector<double> restrict_nodes(std::span<const double> fine);

/// Rows for tau, u, theta (field-major, coarse to fine).
std::vector<ConvergenceRow> convergence_study(const DataFactory& init,
                                              const std::vector<std::size_t>& cells,
                                              const FluidParameters& params,
                                              const SchemeConfig& config);

/// Last reported order of a field (the finest pair), if any.
std::optional<double> observed_order(const std::vector<ConvergenceRow>& rows, Field field);

}  // namespace mhd1d
