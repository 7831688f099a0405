#pragma once

// Residuals of the integral identities that define weak solutions, tested
// against polynomial bumps (1 - s^2)^4 with
//   s^2 = ((x - x0)/rx)^2 + ((t - t0)/rt)^2.
//
// Momentum:  int int u phi_t - psi phi_x  + int u0 phi(x,0)
// Energy:    int int c_V theta phi_t - kappa rho theta_x phi_x + sigma u_x phi
//            + int c_V theta0 phi(x,0)
// Space quadrature follows the staggered layout (nodes with dual widths
// for u, cells for psi/theta/sigma u_x, interior faces for theta_x); time
// quadrature is trapezoid over snapshots.

#include <vector>

#include "mhd1d/model.hpp"

namespace mhd1d {

struct Trajectory;

enum class TestFunctionKind { InteriorBump, BoundaryAdmissibleBump };

struct TestFunction {
  double x0 = 0.5;
  double t0 = 0.0;
  double rx = 0.25;
  double rt = 0.25;
  TestFunctionKind kind = TestFunctionKind::InteriorBump;
  double amplitude = 1.0;

  double value(double x, double t) const noexcept;
  double dx(double x, double t) const noexcept;
  double dt(double x, double t) const noexcept;
};

/// Five fixed interior bumps for the momentum identity, with time centers
/// and radii laid out for a window of 0.25 and scaled by t_end / 0.25.
std::vector<TestFunction> default_momentum_tests(double t_end);

/// Five fixed bumps for the energy identity, three of them touching a wall.
std::vector<TestFunction> default_energy_tests(double t_end);

/// Throws std::domain_error when the support reaches past t_final, or, for
/// an interior bump, past the mass interval [0,1]; std::invalid_argument for
/// nonpositive radii.
void check_support(const TestFunction& phi, double t_final);

/// Requires an interior bump.
double weak_momentum_residual(const Trajectory& traj, const TestFunction& phi);

/// Accepts either kind (interior bumps are admissible here too).
double weak_energy_residual(const Trajectory& traj, const TestFunction& phi);

}  // namespace mhd1d
