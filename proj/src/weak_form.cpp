#include "mhd1d/weak_form.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "mhd1d/solver.hpp"

namespace mhd1d {

namespace {

double radius2(const TestFunction& f, double x, double t) {
  const double sx = (x - f.x0) / f.rx;
  const double st = (t - f.t0) / f.rt;
  return sx * sx + st * st;
}

// Trapezoid in time of per-snapshot spatial integrals.
template <class SpaceIntegral>
double integrate_in_time(const Trajectory& traj, SpaceIntegral&& integrand) {
  double total = 0.0;
  double prev = integrand(traj.snapshots.front());
  for (std::size_t k = 1; k < traj.snapshots.size(); ++k) {
    const double cur = integrand(traj.snapshots[k]);
    total += 0.5 * (traj.snapshots[k].t - traj.snapshots[k - 1].t) * (prev + cur);
    prev = cur;
  }
  return total;
}

}  // namespace

double TestFunction::value(double x, double t) const noexcept {
  const double s2 = radius2(*this, x, t);
  if (s2 >= 1.0) return 0.0;
  const double w = 1.0 - s2;
  return amplitude * w * w * w * w;
}

double TestFunction::dx(double x, double t) const noexcept {
  const double s2 = radius2(*this, x, t);
  if (s2 >= 1.0) return 0.0;
  const double w = 1.0 - s2;
  return amplitude * -8.0 * (x - x0) / (rx * rx) * w * w * w;
}

double TestFunction::dt(double x, double t) const noexcept {
  const double s2 = radius2(*this, x, t);
  if (s2 >= 1.0) return 0.0;
  const double w = 1.0 - s2;
  return amplitude * -8.0 * (t - t0) / (rt * rt) * w * w * w;
}

std::vector<TestFunction> default_momentum_tests(double t_end) {
  const double k = t_end / 0.25;
  const auto I = TestFunctionKind::InteriorBump;
  return {{0.5, 0.05 * k, 0.2, 0.1 * k, I, 1.0},
          {0.3, 0.1 * k, 0.15, 0.08 * k, I, 1.0},
          {0.7, 0.0, 0.2, 0.15 * k, I, 1.0},
          {0.5, 0.12 * k, 0.3, 0.1 * k, I, 1.0},
          {0.25, 0.05 * k, 0.2, 0.12 * k, I, 1.0}};
}

std::vector<TestFunction> default_energy_tests(double t_end) {
  const double k = t_end / 0.25;
  const auto I = TestFunctionKind::InteriorBump;
  const auto B = TestFunctionKind::BoundaryAdmissibleBump;
  return {{0.0, 0.05 * k, 0.3, 0.1 * k, B, 1.0},
          {1.0, 0.0, 0.3, 0.15 * k, B, 1.0},
          {0.5, 0.05 * k, 0.2, 0.1 * k, I, 1.0},
          {0.5, 0.1 * k, 0.6, 0.12 * k, B, 1.0},
          {0.3, 0.0, 0.2, 0.2 * k, I, 1.0}};
}

void check_support(const TestFunction& phi, double t_final) {
  if (!(phi.rx > 0.0 && phi.rt > 0.0)) {
    throw std::invalid_argument("test function radii must be positive");
  }
  if (phi.t0 + phi.rt > t_final) {
    throw std::domain_error(fmt::format("test function support reaches t = {} beyond t = {}",
                                        phi.t0 + phi.rt, t_final));
  }
  if (phi.kind == TestFunctionKind::InteriorBump &&
      (phi.x0 - phi.rx < 0.0 || phi.x0 + phi.rx > 1.0)) {
    throw std::domain_error(fmt::format("interior bump support [{}, {}] leaves (0,1)",
                                        phi.x0 - phi.rx, phi.x0 + phi.rx));
  }
}

double weak_momentum_residual(const Trajectory& traj, const TestFunction& phi) {
  if (phi.kind != TestFunctionKind::InteriorBump) {
    throw std::invalid_argument("momentum identity needs an interior bump");
  }
  check_support(phi, traj.final_time());
  if (phi.amplitude == 0.0) return 0.0;
  const MassGrid& grid = *traj.grid;
  const auto& p = traj.params;

  const double body = integrate_in_time(traj, [&](const State& s) {
    double sum = 0.0;
    for (std::size_t j = 1; j + 1 < grid.n_nodes(); ++j) {
      sum += grid.dual_width(j) * s.u[j] * phi.dt(grid.node(j), s.t);
    }
    for (std::size_t i = 0; i < grid.n_cells(); ++i) {
      const double sigma = stress_sigma(s.tau[i], s.theta[i], s.velocity_gradient(i), p);
      sum -= grid.width(i) * flux_psi(sigma, s.b(i)) * phi.dx(grid.center(i), s.t);
    }
    return sum;
  });

  const State& s0 = traj.snapshots.front();
  double initial = 0.0;
  for (std::size_t j = 1; j + 1 < grid.n_nodes(); ++j) {
    initial += grid.dual_width(j) * s0.u[j] * phi.value(grid.node(j), s0.t);
  }
  return body + initial;
}

double weak_energy_residual(const Trajectory& traj, const TestFunction& phi) {
  check_support(phi, traj.final_time());
  if (phi.amplitude == 0.0) return 0.0;
  const MassGrid& grid = *traj.grid;
  const auto& p = traj.params;
  const std::size_t n = grid.n_cells();

  const double body = integrate_in_time(traj, [&](const State& s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid.center(i);
      const double ux = s.velocity_gradient(i);
      const double sigma = stress_sigma(s.tau[i], s.theta[i], ux, p);
      sum += grid.width(i) *
             (p.cv * s.theta[i] * phi.dt(x, s.t) + sigma * ux * phi.value(x, s.t));
    }
    for (std::size_t f = 1; f < n; ++f) {
      const double rho_f = 2.0 / (s.tau[f - 1] + s.tau[f]);
      const double gx = (s.theta[f] - s.theta[f - 1]) / grid.dual_width(f);
      sum -= grid.dual_width(f) * p.kappa * rho_f * gx * phi.dx(grid.node(f), s.t);
    }
    return sum;
  });

  const State& s0 = traj.snapshots.front();
  double initial = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    initial += grid.width(i) * p.cv * s0.theta[i] * phi.value(grid.center(i), s0.t);
  }
  return body + initial;
}

}  // namespace mhd1d
