#include "mhd1d/presets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "mhd1d/errors.hpp"

namespace mhd1d {

namespace {

constexpr double kPi = std::numbers::pi;

// Fraction of cell i lying in (1/2, 1].
double upper_half_fraction(const MassGrid& grid, std::size_t i) {
  const double lo = std::max(grid.node(i), 0.5);
  const double hi = grid.node(i + 1);
  return hi > lo ? (hi - lo) / grid.width(i) : 0.0;
}

InitialData smooth(const MassGrid& grid) {
  const std::size_t n = grid.n_cells();
  InitialData d;
  d.tau0.resize(n);
  d.b0.resize(n);
  d.theta0.resize(n);
  d.u0.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.center(i);
    d.tau0[i] = 1.0 + 0.2 * std::sin(2.0 * kPi * x);
    d.theta0[i] = 1.0 + 0.1 * std::cos(2.0 * kPi * x);
    d.b0[i] = 1.0 + 0.5 * std::sin(2.0 * kPi * x);
  }
  for (std::size_t j = 1; j < n; ++j) d.u0[j] = 0.1 * std::sin(kPi * grid.node(j));
  return d;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"equilibrium", "smooth", "rough-b", "rough-tau"};
  return names;
}

InitialData load_preset(std::string_view name, const MassGrid& grid) {
  const std::size_t n = grid.n_cells();
  InitialData d;
  if (name == "equilibrium") {
    d.tau0.assign(n, 1.0);
    d.b0.assign(n, 1.0);
    d.theta0.assign(n, 1.0);
    d.u0.assign(n + 1, 0.0);
  } else if (name == "smooth") {
    d = smooth(grid);
  } else if (name == "rough-b") {
    d = smooth(grid);
    for (std::size_t i = 0; i < n; ++i) d.b0[i] = 1.0 + upper_half_fraction(grid, i);
  } else if (name == "rough-tau") {
    d = smooth(grid);
    for (std::size_t i = 0; i < n; ++i) d.tau0[i] = 0.8 + 0.4 * upper_half_fraction(grid, i);
  } else {
    throw ConfigError("init.preset", fmt::format("unknown preset '{}'", name));
  }
  return validate_initial(std::move(d), grid);
}

}  // namespace mhd1d
