#include "mhd1d/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace mhd1d {

namespace {

void require_positive(double v, const char* name) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw std::invalid_argument(fmt::format("{} must be finite and positive, got {}", name, v));
  }
}

void require_tau(double tau) {
  if (!(tau > 0.0)) {
    throw std::domain_error(fmt::format("specific volume must be positive, got {}", tau));
  }
}

}  // namespace

void FluidParameters::validate() const {
  require_positive(R, "R");
  require_positive(cv, "cv");
  require_positive(mu, "mu");
  require_positive(kappa, "kappa");
}

MassGrid::MassGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  const std::size_t n = nodes_.size() - 1;
  widths_.resize(n);
  centers_.resize(n);
  dual_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    widths_[i] = nodes_[i + 1] - nodes_[i];
    centers_[i] = 0.5 * (nodes_[i] + nodes_[i + 1]);
    dual_[i] += 0.5 * widths_[i];
    dual_[i + 1] += 0.5 * widths_[i];
  }
}

MassGrid MassGrid::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("grid needs at least one cell");
  std::vector<double> nodes(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    nodes[j] = static_cast<double>(j) / static_cast<double>(n);
  }
  return MassGrid(std::move(nodes));
}

MassGrid MassGrid::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 2) throw std::invalid_argument("grid needs at least one cell");
  if (nodes.front() != 0.0 || nodes.back() != 1.0) {
    throw std::invalid_argument("grid nodes must span [0,1] exactly");
  }
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    if (!(nodes[j] > nodes[j - 1])) {
      throw std::invalid_argument(fmt::format("grid nodes not strictly increasing at {}", j));
    }
  }
  return MassGrid(std::move(nodes));
}

void State::check_invariants() const {
  if (!grid || !a) throw std::invalid_argument("state has no grid or magnetic invariant");
  const std::size_t n = grid->n_cells();
  if (tau.size() != n || theta.size() != n || a->size() != n || u.size() != n + 1) {
    throw std::invalid_argument("state arrays do not match the grid");
  }
  if (u.front() != 0.0 || u.back() != 0.0) {
    throw std::invalid_argument("boundary velocity must vanish");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::isfinite(tau[i]) && tau[i] > 0.0)) {
      throw std::invalid_argument(fmt::format("tau[{}] = {} is not positive", i, tau[i]));
    }
    if (!(std::isfinite(theta[i]) && theta[i] > 0.0)) {
      throw std::invalid_argument(fmt::format("theta[{}] = {} is not positive", i, theta[i]));
    }
    if (!std::isfinite((*a)[i])) {
      throw std::invalid_argument(fmt::format("a[{}] is not finite", i));
    }
  }
  for (double v : u) {
    if (!std::isfinite(v)) throw std::invalid_argument("velocity is not finite");
  }
}

State InitialData::to_state(std::shared_ptr<const MassGrid> grid) const {
  if (a.size() != tau0.size()) {
    throw std::invalid_argument("initial data must be validated before use");
  }
  State s;
  s.t = 0.0;
  s.tau = tau0;
  s.theta = theta0;
  s.u = u0;
  s.a = std::make_shared<const std::vector<double>>(a);
  s.grid = std::move(grid);
  s.check_invariants();
  return s;
}

InitialData validate_initial(InitialData data, const MassGrid& grid) {
  const std::size_t n = grid.n_cells();
  if (data.tau0.size() != n || data.b0.size() != n || data.theta0.size() != n ||
      data.u0.size() != n + 1) {
    throw std::invalid_argument(fmt::format(
        "initial data sized (tau0={}, u0={}, b0={}, theta0={}) for a grid of {} cells",
        data.tau0.size(), data.u0.size(), data.b0.size(), data.theta0.size(), n));
  }
  auto finite = [](const std::vector<double>& v, const char* name) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!std::isfinite(v[i])) {
        throw std::invalid_argument(fmt::format("{}[{}] is not finite", name, i));
      }
    }
  };
  finite(data.tau0, "tau0");
  finite(data.u0, "u0");
  finite(data.b0, "b0");
  finite(data.theta0, "theta0");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(data.tau0[i] > 0.0)) {
      throw std::invalid_argument(fmt::format("tau0[{}] = {} is not positive", i, data.tau0[i]));
    }
    if (!(data.theta0[i] > 0.0)) {
      throw std::invalid_argument(
          fmt::format("theta0[{}] = {} is not positive", i, data.theta0[i]));
    }
  }
  if (data.u0.front() != 0.0 || data.u0.back() != 0.0) {
    throw std::invalid_argument("u0 must vanish at both boundary nodes");
  }

  const auto [tmin, tmax] = std::minmax_element(data.tau0.begin(), data.tau0.end());
  const double thmin = *std::min_element(data.theta0.begin(), data.theta0.end());
  data.m = std::min(*tmin, thmin);
  data.M = *tmax;
  data.a.resize(n);
  for (std::size_t i = 0; i < n; ++i) data.a[i] = data.b0[i] * data.tau0[i];
  return data;
}

double pressure(double tau, double theta, const FluidParameters& p) {
  require_tau(tau);
  return p.R * theta / tau;
}

double stress_sigma(double tau, double theta, double u_x, const FluidParameters& p) {
  require_tau(tau);
  return (p.mu * u_x - p.R * theta) / tau;
}

double flux_psi(double sigma, double b) noexcept { return sigma - 0.5 * b * b; }

double magnetic_field(double a, double tau) {
  require_tau(tau);
  return a / tau;
}

}  // namespace mhd1d
