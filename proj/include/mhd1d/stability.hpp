#pragma once

// Lipschitz-dependence experiment: two runs from nearby initial data,
// measured in the norms of the stability estimate
//   sup|d tau| + ||d u||_{V_2} + sup|d b| + ||d theta||_{L^r(0,T;L^q)}
//     <= C (sup|d tau0| + sup|d b0| + ||d u0||_{L^2} + ||d theta0||_{L^1}),
// with V_2 = L^inf(L^2) + (u_x in L^2(L^2)) and 1/(2q) + 1/r = (1 + eps)/2.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mhd1d/norms.hpp"
#include "mhd1d/solver.hpp"

namespace mhd1d {

enum class PerturbationShape { Shift, Sine, Jump };

PerturbationShape parse_shape(std::string_view name);
std::string_view shape_name(PerturbationShape shape);

/// Adds delta * g to one initial field (tau, u, theta or b), g being
///   shift: 1,  sine: sin(2 pi x) (sin(pi y) for u),  jump: 1{x > 1/2}
/// (cell averages for cell fields). Velocity perturbations leave the wall
/// nodes at zero. The result is revalidated.
InitialData perturb(const InitialData& data, const MassGrid& grid, Field field,
                    PerturbationShape shape, double delta);

struct StabilityNorms {
  double tau = 0.0;
  double u = 0.0;
  double b = 0.0;
  double theta = 0.0;
  double total() const { return tau + u + b + theta; }
};

struct StabilityReport {
  double delta = 0.0;
  StabilityNorms lhs;  // sup d tau, V_2 d u, sup d b, L^r(L^q) d theta
  StabilityNorms rhs;  // sup d tau0, L^2 d u0, sup d b0, L^1 d theta0
  std::optional<double> ratio;  // lhs total / rhs total when rhs total > 0
  double q = kInfinity;
  double r = 1.6;
  double eps = 0.25;
  bool uniqueness_violation = false;
  std::string digest_base;
  std::string digest_perturbed;
};

/// SHA-256 of a canonical text rendering of everything that determines a run.
std::string run_digest(const InitialData& init, const MassGrid& grid,
                       const FluidParameters& params, const SchemeConfig& config);

/// Norms of the difference of two finished runs. Both must share the grid and
/// the snapshot times. Throws ConstraintError if (q, eps) is inadmissible.
StabilityReport compare_runs(const Trajectory& base, const Trajectory& perturbed,
                             const InitialData& base_init, const InitialData& perturbed_init,
                             double delta, double q, double eps);

/// Runs both problems concurrently and compares them.
StabilityReport stability_experiment(const InitialData& base, const InitialData& perturbed,
                                     std::shared_ptr<const MassGrid> grid,
                                     const FluidParameters& params, const SchemeConfig& config,
                                     double q, double eps, double delta = 0.0);

struct StabilityLadderSpec {
  Field field = Field::Theta;
  PerturbationShape shape = PerturbationShape::Sine;
  std::vector<double> deltas{1e-1, 1e-2, 1e-3};
  std::vector<double> qs{kInfinity};
  double eps = 0.25;
};

/// One report per (delta, q), delta-major. The base run and every perturbed
/// run execute concurrently, one run per task.
std::vector<StabilityReport> stability_ladder(const InitialData& base,
                                              std::shared_ptr<const MassGrid> grid,
                                              const FluidParameters& params,
                                              const SchemeConfig& config,
                                              const StabilityLadderSpec& spec);

}  // namespace mhd1d
