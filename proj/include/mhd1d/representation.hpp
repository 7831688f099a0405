#pragma once

// Pointwise representation formulas for the specific volume and the
// time-integrated effective flux, evaluated as oracles over a trajectory.

#include <span>
#include <vector>

#include "mhd1d/model.hpp"

namespace mhd1d {

struct Trajectory;

/// J w(x) = int_0^x w - <int_0^x w>, evaluated at cell centers for a cell
/// field (midpoint cumulative sums).
std::vector<double> j_omega_cells(std::span<const double> w, const MassGrid& grid);

/// Same operator for a node field: the cumulative integral at cell center
/// i is sum_{j=1..i} hbar_j w_j (dual-cell quadrature, up to a constant that
/// the mean subtraction removes).
std::vector<double> j_omega_nodes(std::span<const double> w, const MassGrid& grid);

/// Mass average <w> = sum h_i w_i of a cell field.
double mass_average(std::span<const double> w, const MassGrid& grid);

/// Per snapshot, max_i |tau_i(t) - RHS_i(t)| where
///   RHS = G(t) [tau0 + int_0^t K(s)/G(s) ds],  G(t) = exp(int_0^t psi / mu),
///   K = (R theta + a^2 / (2 tau)) / mu.
/// The inner exponent is integrated by the trapezoid rule; the outer
/// integral treats the exponent and K as linear on each snapshot interval
/// and integrates the exponential exactly, so steady states are reproduced
/// to round-off. Throws InsufficientData for fewer than two snapshots.
std::vector<double> representation_residual(const Trajectory& traj);

/// Per snapshot, max_i |int_0^t psi_i - J(u - u0)_i - int_0^t <psi>| with
/// trapezoid time integrals.
std::vector<double> flux_identity_residual(const Trajectory& traj);

/// Leftmost mass coordinate where the piecewise-linear interpolant of tau
/// through the cell centers (constant beyond the outer centers) equals 1.
double unit_density_point(const State& state);

}  // namespace mhd1d
