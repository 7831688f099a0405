#pragma once

// Physical model of a viscous, heat-conducting, non-resistive polytropic gas
// in Lagrangian mass coordinates on the unit mass interval [0,1].
//
// Layout is staggered: specific volume tau, temperature theta and the
// magnetic invariant a = b*tau live at cell centers, the velocity u lives
// at the n+1 nodes with u_0 = u_n = 0.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace mhd1d {

/// Gas constant, specific heat, combined viscosity mu = 2*nu + eta and
/// heat conductivity. The magnetic diffusivity is identically zero.
struct FluidParameters {
  double R = 1.0;
  double cv = 1.0;
  double mu = 1.0;
  double kappa = 1.0;

  /// Throws std::invalid_argument unless every constant is finite and > 0.
  void validate() const;
};

class MassGrid {
public:
  /// n equal cells; node j sits at j/n.
  static MassGrid uniform(std::size_t n);
  /// Arbitrary partition. Nodes must start at 0, end at 1 and increase.
  static MassGrid from_nodes(std::vector<double> nodes);

  std::size_t n_cells() const noexcept { return widths_.size(); }
  std::size_t n_nodes() const noexcept { return nodes_.size(); }

  std::span<const double> widths() const noexcept { return widths_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> centers() const noexcept { return centers_; }
  /// Dual (node-centered) widths: (h_{j-1} + h_j)/2 inside, h/2 at the ends.
  std::span<const double> dual_widths() const noexcept { return dual_; }

  double width(std::size_t i) const noexcept { return widths_[i]; }
  double center(std::size_t i) const noexcept { return centers_[i]; }
  double node(std::size_t j) const noexcept { return nodes_[j]; }
  double dual_width(std::size_t j) const noexcept { return dual_[j]; }

  bool operator==(const MassGrid&) const = default;

private:
  explicit MassGrid(std::vector<double> nodes);

  std::vector<double> nodes_;
  std::vector<double> widths_;
  std::vector<double> centers_;
  std::vector<double> dual_;
};

/// One time level of the discrete solution. The grid and the magnetic
/// invariant are shared, immutable, across every state of a run.
struct State {
  double t = 0.0;
  std::vector<double> tau;    // per cell
  std::vector<double> theta;  // per cell
  std::vector<double> u;      // per node, u.front() == u.back() == 0
  std::shared_ptr<const std::vector<double>> a;  // per cell, b0 * tau0
  std::shared_ptr<const MassGrid> grid;

  const MassGrid& mesh() const noexcept { return *grid; }
  std::span<const double> magnetic_invariant() const noexcept { return *a; }

  double velocity_gradient(std::size_t i) const noexcept {
    return (u[i + 1] - u[i]) / grid->width(i);
  }
  double b(std::size_t i) const noexcept { return (*a)[i] / tau[i]; }

  /// Throws std::invalid_argument on size mismatches, nonzero boundary
  /// velocity, non-finite entries or nonpositive tau/theta.
  void check_invariants() const;
};

/// Initial fields sampled on a grid. `a` is filled by validate_initial.
struct InitialData {
  std::vector<double> tau0;    // per cell
  std::vector<double> u0;      // per node
  std::vector<double> b0;      // per cell
  std::vector<double> theta0;  // per cell
  double m = 0.0;  // lower bound for tau0 and theta0
  double M = 0.0;  // upper bound for tau0
  std::vector<double> a;

  /// Initial state on `grid`; the data must already be validated.
  State to_state(std::shared_ptr<const MassGrid> grid) const;
};

/// Checks positivity, finiteness, boundary velocity and sizes, recomputes
/// m = min(min tau0, min theta0) and M = max tau0, and attaches a = b0*tau0.
InitialData validate_initial(InitialData data, const MassGrid& grid);

// Constitutive relations. All throw std::domain_error for tau <= 0.
double pressure(double tau, double theta, const FluidParameters& p);
/// sigma = (mu*u_x - R*theta)/tau
double stress_sigma(double tau, double theta, double u_x, const FluidParameters& p);
/// psi = sigma - b^2/2
double flux_psi(double sigma, double b) noexcept;
/// b = a/tau
double magnetic_field(double a, double tau);

}  // namespace mhd1d
