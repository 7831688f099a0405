#pragma once

#include <vector>

#include "mhd1d/model.hpp"

namespace mhd1d {

struct Trajectory;

struct DiagnosticRecord {
  double t = 0.0;
  double volume = 0.0;           // sum h tau
  // Node-mass kinetic energy sum hbar u^2/2 plus sum h (c_V theta + a^2/(2 tau)):
  // the energy the staggered scheme conserves in semi-discrete form.
  double energy = 0.0;
  double entropy_fn = 0.0;       // sum h (R(tau - log tau - 1) + c_V(theta - log theta - 1))
  double dissipation_cum = 0.0;  // time integral of dissipation_rate
  double tau_min = 0.0;
  double tau_max = 0.0;
  double theta_min = 0.0;
  double u_l2 = 0.0;  // node quadrature with dual widths
};

/// Thermal plus viscous entropy production
///   sum_faces hbar kappa theta_x^2 / (tau_f theta_L theta_R) + sum_cells h mu u_x^2 / (tau theta)
/// with theta_x the face difference (zero on boundary faces) and tau_f the
/// face mean of tau. This is the exact discrete counterpart of the heat
/// stencil, so it balances the discrete entropy budget term by term.
double dissipation_rate(const State& state, const FluidParameters& params);

DiagnosticRecord diagnostics(const State& state, double cum_dissipation,
                             const FluidParameters& params);

std::vector<DiagnosticRecord> diagnostics(const Trajectory& traj);

/// Face temperature gradient on interior faces 1..n-1; entries 0 and n are 0.
std::vector<double> face_theta_gradient(const State& state);

/// Physical entropy sum h (R log tau + c_V log theta). Its growth equals the
/// cumulative dissipation up to time-discretisation error.
double physical_entropy(const State& state, const FluidParameters& params);

/// Kinetic plus magnetic part of `energy`.
double mechanical_energy(const State& state);

}  // namespace mhd1d
