#include "mhd1d/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "mhd1d/diagnostics.hpp"
#include "mhd1d/errors.hpp"
#include "mhd1d/tridiagonal.hpp"

namespace mhd1d {

namespace {

// Output times closer than this (relative) to t_end collapse onto t_end.
constexpr double kTimeSlack = 1e-12;

// Face conductance rho_f / hbar_f on interior faces f = 1..n-1 (face f is
// node f, between cells f-1 and f); the boundary entries stay zero.
std::vector<double> face_conductance(const MassGrid& grid, std::span<const double> tau) {
  const std::size_t n = grid.n_cells();
  std::vector<double> w(n + 1, 0.0);
  for (std::size_t f = 1; f < n; ++f) {
    const double rho_face = 2.0 / (tau[f - 1] + tau[f]);
    w[f] = rho_face / grid.dual_width(f);
  }
  return w;
}

// kappa * d/dx(rho theta_x) per cell.
std::vector<double> heat_divergence(const MassGrid& grid, std::span<const double> w,
                                    std::span<const double> theta, double kappa) {
  const std::size_t n = grid.n_cells();
  std::vector<double> div(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? w[i] * (theta[i] - theta[i - 1]) : 0.0;
    const double right = i + 1 < n ? w[i + 1] * (theta[i + 1] - theta[i]) : 0.0;
    div[i] = kappa * (right - left) / grid.width(i);
  }
  return div;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

void SchemeConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw std::invalid_argument(fmt::format("{} must be positive, got {}", name, v));
    }
  };
  positive(dt_init, "dt_init");
  if (!(std::isfinite(t_end) && t_end >= 0.0)) {
    throw std::invalid_argument(fmt::format("t_end must be nonnegative, got {}", t_end));
  }
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
    throw std::invalid_argument(fmt::format("cfl_safety must lie in (0,1], got {}", cfl_safety));
  }
  positive(newton_tol, "newton_tol");
  positive(snapshot_interval, "snapshot_interval");
  if (newton_max_iter < 1) throw std::invalid_argument("newton_max_iter must be at least 1");
  if (max_dt_halvings < 0) throw std::invalid_argument("max_dt_halvings must be nonnegative");
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(snapshots.size());
  for (const auto& s : snapshots) t.push_back(s.t);
  return t;
}

std::vector<double> output_times(const SchemeConfig& config) {
  std::vector<double> out;
  if (config.t_end <= 0.0) return out;
  const double cutoff = config.t_end * (1.0 - kTimeSlack);
  for (long k = 1;; ++k) {
    const double tk = static_cast<double>(k) * config.snapshot_interval;
    if (tk >= cutoff) break;
    out.push_back(tk);
  }
  out.push_back(config.t_end);
  return out;
}

double next_output_time(double t, const SchemeConfig& config) {
  const double cutoff = config.t_end * (1.0 - kTimeSlack);
  auto k = static_cast<long>(std::floor(t / config.snapshot_interval)) + 1;
  while (static_cast<double>(k) * config.snapshot_interval <= t) ++k;
  const double tk = static_cast<double>(k) * config.snapshot_interval;
  return tk >= cutoff ? config.t_end : tk;
}

double stability_limit(const State& state, const FluidParameters& params,
                       const SchemeConfig& config) {
  const MassGrid& grid = state.mesh();
  double limit = std::numeric_limits<double>::infinity();
  const bool explicit_heat = config.theta_step_mode == ThetaStepMode::Explicit;
  for (std::size_t i = 0; i < grid.n_cells(); ++i) {
    const double h2 = grid.width(i) * grid.width(i);
    limit = std::min(limit, 0.5 * h2 * state.tau[i] / params.mu);
    if (explicit_heat) limit = std::min(limit, 0.5 * params.cv * state.tau[i] * h2 / params.kappa);
  }
  return limit;
}

double stable_dt(const State& state, const FluidParameters& params, const SchemeConfig& config) {
  double dt = std::min(config.dt_init, config.cfl_safety * stability_limit(state, params, config));
  if (state.t < config.t_end) {
    dt = std::min(dt, next_output_time(state.t, config) - state.t);
  }
  return dt;
}

HeatSolveResult solve_heat_implicit(const MassGrid& grid, std::span<const double> theta_old,
                                    std::span<const double> source,
                                    std::span<const double> tau_coeff, double dt,
                                    const FluidParameters& params, const SchemeConfig& config) {
  const std::size_t n = grid.n_cells();
  const auto w = face_conductance(grid, tau_coeff);
  const double k = dt * params.kappa;

  std::vector<double> lower(n, 0.0), diag(n), upper(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double wl = i > 0 ? w[i] : 0.0;
    const double wr = i + 1 < n ? w[i + 1] : 0.0;
    lower[i] = -k * wl / grid.width(i);
    upper[i] = -k * wr / grid.width(i);
    diag[i] = params.cv + k * (wl + wr) / grid.width(i);
  }

  HeatSolveResult out;
  out.theta.assign(theta_old.begin(), theta_old.end());
  auto residual = [&](std::span<const double> theta) {
    const auto div = heat_divergence(grid, w, theta, params.kappa);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = params.cv * (theta[i] - theta_old[i]) - dt * source[i] - dt * div[i];
    }
    return r;
  };

  auto r = residual(out.theta);
  out.residual = max_abs(r);
  while (out.residual > config.newton_tol) {
    if (out.iterations >= config.newton_max_iter) {
      throw IterationFailure(
          fmt::format("heat solve residual {:.3e} above tolerance {:.3e} after {} iterations",
                      out.residual, config.newton_tol, out.iterations),
          out.iterations, out.residual);
    }
    for (double& v : r) v = -v;
    const auto delta = solve_tridiagonal(lower, diag, upper, r);
    for (std::size_t i = 0; i < n; ++i) out.theta[i] += delta[i];
    ++out.iterations;
    r = residual(out.theta);
    out.residual = max_abs(r);
  }
  return out;
}

HeatSolveResult implicit_heat_solve(const State& state, double dt, const FluidParameters& params,
                                    const SchemeConfig& config) {
  if (config.theta_step_mode != ThetaStepMode::Implicit) {
    throw std::invalid_argument("implicit_heat_solve requires implicit theta mode");
  }
  const MassGrid& grid = state.mesh();
  const std::size_t n = grid.n_cells();
  std::vector<double> source(n), tau_new(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ux = state.velocity_gradient(i);
    source[i] = stress_sigma(state.tau[i], state.theta[i], ux, params) * ux;
    tau_new[i] = state.tau[i] + dt * ux;
  }
  return solve_heat_implicit(grid, state.theta, source, tau_new, dt, params, config);
}

State step(const State& state, double dt, const FluidParameters& params,
           const SchemeConfig& config) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument(fmt::format("time step must be positive, got {}", dt));
  }
  const MassGrid& grid = state.mesh();
  const std::size_t n = grid.n_cells();
  const auto a = state.magnetic_invariant();

  std::vector<double> ux(n), sigma(n), psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    ux[i] = state.velocity_gradient(i);
    sigma[i] = stress_sigma(state.tau[i], state.theta[i], ux[i], params);
    psi[i] = flux_psi(sigma[i], a[i] / state.tau[i]);
  }

  State next;
  next.grid = state.grid;
  next.a = state.a;
  next.t = state.t + dt;

  next.tau.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    next.tau[i] = state.tau[i] + dt * ux[i];
    if (!(next.tau[i] > 0.0)) {
      throw PositivityFailure(
          fmt::format("tau[{}] = {} after step dt = {}", i, next.tau[i], dt), i, 0.5 * dt);
    }
  }

  next.u.assign(n + 1, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    next.u[j] = state.u[j] + dt * (psi[j] - psi[j - 1]) / grid.dual_width(j);
  }

  std::vector<double> source(n);
  for (std::size_t i = 0; i < n; ++i) source[i] = sigma[i] * ux[i];

  if (config.theta_step_mode == ThetaStepMode::Implicit) {
    next.theta = solve_heat_implicit(grid, state.theta, source, next.tau, dt, params, config).theta;
  } else {
    const auto w = face_conductance(grid, next.tau);
    const auto div = heat_divergence(grid, w, state.theta, params.kappa);
    next.theta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      next.theta[i] = state.theta[i] + dt * (source[i] + div[i]) / params.cv;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(next.theta[i] > 0.0) || !std::isfinite(next.theta[i])) {
      throw PositivityFailure(
          fmt::format("theta[{}] = {} after step dt = {}", i, next.theta[i], dt), i, 0.5 * dt);
    }
  }
  return next;
}

Trajectory run(const InitialData& init, std::shared_ptr<const MassGrid> grid,
               const FluidParameters& params, const SchemeConfig& config) {
  params.validate();
  config.validate();

  Trajectory traj;
  traj.grid = grid;
  traj.params = params;
  traj.config = config;

  State state = init.to_state(std::move(grid));
  double cum = 0.0;
  double rate = dissipation_rate(state, params);
  traj.snapshots.push_back(state);
  traj.dissipation_cum.push_back(cum);

  for (double target : output_times(config)) {
    while (state.t < target) {
      double dt = stable_dt(state, params, config);
      const bool lands = dt >= target - state.t;
      State next;
      for (int attempt = 0;; ++attempt) {
        try {
          next = step(state, dt, params, config);
          break;
        } catch (const PositivityFailure& e) {
          if (attempt >= config.max_dt_halvings) {
            throw PositivityFailure(fmt::format("t = {}: {}", state.t, e.what()), e.cell(),
                                    e.suggested_dt());
          }
          dt = e.suggested_dt();
        } catch (const IterationFailure& e) {
          throw IterationFailure(fmt::format("t = {}: {}", state.t, e.what()), e.iterations(),
                                 e.residual());
        }
      }
      if (lands && dt >= target - state.t) next.t = target;
      const double next_rate = dissipation_rate(next, params);
      cum += 0.5 * dt * (rate + next_rate);
      rate = next_rate;
      state = std::move(next);
    }
    traj.snapshots.push_back(state);
    traj.dissipation_cum.push_back(cum);
  }
  return traj;
}

}  // namespace mhd1d
