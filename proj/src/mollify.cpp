#include "mhd1d/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "mhd1d/errors.hpp"

namespace mhd1d {

namespace {

double kernel(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double w = 1.0 - s * s;
  return w * w;
}

// Convolution at `at` over samples f(pos) plus their mirror images at -pos
// and 2 - pos (multiplied by `sign`), each weighted by kernel * width.
double convolve(double at, std::span<const double> f, std::span<const double> pos,
                std::span<const double> widths, double sign, double epsilon) {
  double num = 0.0;
  double den = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto add = [&](double y, double width, double value) {
    const double w = kernel((y - at) / epsilon) * width;
    if (w == 0.0) return;
    num += w * value;
    den += w;
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  };
  for (std::size_t k = 0; k < f.size(); ++k) {
    add(pos[k], widths[k], f[k]);
    add(-pos[k], widths[k], sign * f[k]);
    add(2.0 - pos[k], widths[k], sign * f[k]);
  }
  if (den == 0.0) return 0.0;
  // Rounding can push a convex combination one ulp past its hull.
  return std::clamp(num / den, lo, hi);
}

}  // namespace

void MollifierConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ConfigError("mollifier.epsilon", fmt::format("must lie in (0, 1), got {}", epsilon));
  }
}

std::vector<double> mollify_cells(std::span<const double> f, const MassGrid& grid, double epsilon) {
  MollifierConfig{epsilon}.validate();
  std::vector<double> out(grid.n_cells());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = convolve(grid.center(i), f, grid.centers(), grid.widths(), 1.0, epsilon);
  }
  return out;
}

std::vector<double> mollify_nodes(std::span<const double> f, const MassGrid& grid, double epsilon) {
  MollifierConfig{epsilon}.validate();
  std::vector<double> out(grid.n_nodes(), 0.0);
  for (std::size_t j = 1; j + 1 < out.size(); ++j) {
    out[j] = convolve(grid.node(j), f, grid.nodes(), grid.dual_widths(), -1.0, epsilon);
  }
  return out;
}

InitialData mollify(const InitialData& data, const MassGrid& grid, const MollifierConfig& cfg) {
  cfg.validate();
  InitialData out;
  out.tau0 = mollify_cells(data.tau0, grid, cfg.epsilon);
  out.theta0 = mollify_cells(data.theta0, grid, cfg.epsilon);
  out.b0 = mollify_cells(data.b0, grid, cfg.epsilon);
  out.u0 = mollify_nodes(data.u0, grid, cfg.epsilon);
  return validate_initial(std::move(out), grid);
}

double l2_distance(const InitialData& lhs, const InitialData& rhs, const MassGrid& grid) {
  double sum = 0.0;
  auto cells = [&](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < grid.n_cells(); ++i) {
      sum += grid.width(i) * (a[i] - b[i]) * (a[i] - b[i]);
    }
  };
  cells(lhs.tau0, rhs.tau0);
  cells(lhs.theta0, rhs.theta0);
  cells(lhs.b0, rhs.b0);
  for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
    sum += grid.dual_width(j) * (lhs.u0[j] - rhs.u0[j]) * (lhs.u0[j] - rhs.u0[j]);
  }
  return std::sqrt(sum);
}

}  // namespace mhd1d
