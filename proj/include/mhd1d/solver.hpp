#pragma once

// Time integration on the staggered mass grid.
//
// One step, in this order:
//   1. u_x, sigma, psi from the old state
//   2. tau += dt * u_x
//   3. u   += dt * d(psi)/dx at interior nodes, old psi
//   4. c_V theta += dt * (sigma u_x)_old + dt * kappa d/dx(rho theta_x),
//      rho evaluated with the new tau (harmonic face mean), diffusion either
//      explicit (old theta) or backward Euler.
// Neumann boundaries are zero-flux faces, so the heat operator telescopes.

#include <cstddef>
#include <memory>
#include <vector>

#include "mhd1d/model.hpp"

namespace mhd1d {

enum class ThetaStepMode { Explicit, Implicit };

struct SchemeConfig {
  double dt_init = 1e-3;  // upper bound on any step
  double cfl_safety = 0.4;
  double t_end = 1.0;
  ThetaStepMode theta_step_mode = ThetaStepMode::Implicit;
  double newton_tol = 1e-10;
  int newton_max_iter = 20;
  double snapshot_interval = 0.1;
  int max_dt_halvings = 10;

  void validate() const;
};

struct Trajectory {
  std::shared_ptr<const MassGrid> grid;
  FluidParameters params;
  SchemeConfig config;
  std::vector<State> snapshots;
  /// Time-integrated dissipation rate at each snapshot, accumulated per step.
  std::vector<double> dissipation_cum;

  double final_time() const { return snapshots.empty() ? 0.0 : snapshots.back().t; }
  std::vector<double> times() const;
};

/// Snapshot times after t = 0: multiples of the interval strictly below
/// t_end, then t_end itself.
std::vector<double> output_times(const SchemeConfig& config);

/// The next output time strictly after t (t_end if none remains).
double next_output_time(double t, const SchemeConfig& config);

/// The explicit stability bound of the viscous term, and of the heat term in
/// explicit mode: min_i 0.5 h_i^2 tau_i / mu and min_i 0.5 c_V tau_i h_i^2 / kappa.
double stability_limit(const State& state, const FluidParameters& params,
                       const SchemeConfig& config);

/// cfl_safety * stability_limit, capped by dt_init and clipped to the next
/// output time.
double stable_dt(const State& state, const FluidParameters& params, const SchemeConfig& config);

struct HeatSolveResult {
  std::vector<double> theta;
  int iterations = 0;
  double residual = 0.0;  // max-norm of the discrete energy-equation residual
};

/// Backward-Euler temperature update:
///   c_V (theta - theta_old) = dt*source + dt*kappa*D(tau_coeff) theta
/// solved by Newton iteration on the residual (linear, so one iteration).
HeatSolveResult solve_heat_implicit(const MassGrid& grid, std::span<const double> theta_old,
                                    std::span<const double> source,
                                    std::span<const double> tau_coeff, double dt,
                                    const FluidParameters& params, const SchemeConfig& config);

/// Temperature update of `step` in implicit mode: source (sigma u_x) from
/// `state`, diffusion coefficient from tau + dt*u_x.
HeatSolveResult implicit_heat_solve(const State& state, double dt, const FluidParameters& params,
                                    const SchemeConfig& config);

/// Advances by dt. Throws std::invalid_argument for dt <= 0 or an invalid
/// state, PositivityFailure, or IterationFailure.
State step(const State& state, double dt, const FluidParameters& params,
           const SchemeConfig& config);

/// Integrates from the initial data to t_end, recording a snapshot at t = 0,
/// every output time and t_end. Halves dt on positivity failure up to
/// config.max_dt_halvings times before giving up.
Trajectory run(const InitialData& init, std::shared_ptr<const MassGrid> grid,
               const FluidParameters& params, const SchemeConfig& config);

}  // namespace mhd1d
