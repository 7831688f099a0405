#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mhd1d/model.hpp"

namespace mhd1d {

/// Named initial-data scenarios, sampled on `grid` and validated:
///   equilibrium  tau = theta = b = 1, u = 0
///   smooth       tau0 = 1 + 0.2 sin 2pi x, u0 = 0.1 sin pi x,
///                theta0 = 1 + 0.1 cos 2pi x, b0 = 1 + 0.5 sin 2pi x
///   rough-b      smooth, but b0 = 1 + 1{x > 1/2}
///   rough-tau    smooth, but tau0 = 0.8 + 0.4 * 1{x > 1/2}
/// Smooth parts are point samples (cell centers, nodes for u); indicator
/// parts are exact cell averages so the total volume stays 1 on any grid.
InitialData load_preset(std::string_view name, const MassGrid& grid);

const std::vector<std::string>& preset_names();

}  // namespace mhd1d
