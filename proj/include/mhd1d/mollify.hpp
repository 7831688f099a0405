#pragma once

// Regularisation of initial data by a normalised discrete convolution with
// the kernel (1 - s^2)^2, s = (y - y')/epsilon. Cell fields are reflected
// evenly at both walls, the node velocity oddly, so u0 stays zero there.
// Weights are normalised per output point, making every value a convex
// combination of inputs: bounds and sup-norms cannot grow.

#include "mhd1d/model.hpp"

namespace mhd1d {

struct MollifierConfig {
  double epsilon = 0.05;

  /// Throws ConfigError("mollifier.epsilon") unless 0 < epsilon < 1.
  void validate() const;
};

/// Smoothed values of a cell field (even reflection).
std::vector<double> mollify_cells(std::span<const double> f, const MassGrid& grid, double epsilon);

/// Smoothed values of a node field (odd reflection, ends set to 0).
std::vector<double> mollify_nodes(std::span<const double> f, const MassGrid& grid, double epsilon);

/// Mollified and revalidated data.
InitialData mollify(const InitialData& data, const MassGrid& grid, const MollifierConfig& cfg);

/// Combined discrete L^2 distance over tau0, u0, b0, theta0 (cells with h,
/// nodes with dual widths).
double l2_distance(const InitialData& lhs, const InitialData& rhs, const MassGrid& grid);

}  // namespace mhd1d
