#pragma once

// Discrete L^r(0,T; L^q) norms over trajectory snapshots. Space quadrature
// is midpoint on the field's native cells (cells, nodes with dual widths, or
// interior faces); time quadrature is trapezoid over snapshot times.

#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "mhd1d/model.hpp"

namespace mhd1d {

struct Trajectory;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct NormSpec {
  double q = 2.0;  // space exponent, may be kInfinity
  double r = 2.0;  // time exponent, may be kInfinity
};

/// Which admissibility rule a (q, r) pair is checked against.
enum class NormContext {
  Unconstrained,        // q, r in [1, inf]
  Temperature,          // 1/(2q) + 1/r > 1/2
  TemperatureGradient,  // q, r in [1,2], 1/(2q) + 1/r > 1
  Stability,            // q in [2, inf], 1/(2q) + 1/r = (1 + eps)/2, eps in (0, 1/2)
};

/// Throws ConstraintError naming the violated condition. `eps` is required
/// for NormContext::Stability.
void check_admissible(const NormSpec& spec, NormContext context,
                      std::optional<double> eps = std::nullopt);

/// The time exponent r paired with q on the stability family for eps.
NormSpec stability_norm_spec(double q, double eps);

enum class Field { Tau, U, Theta, B, Ux, ThetaX };

Field parse_field(std::string_view name);
std::string_view field_name(Field f);

/// Values of one field over time together with its space quadrature weights.
struct SpaceTimeSamples {
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // values[k] sampled at times[k]
  std::vector<double> weights;
};

/// Samples of `field` from every snapshot of a trajectory.
SpaceTimeSamples sample_field(const Trajectory& traj, Field field);

/// Field values of one state (cells, nodes or faces depending on the field).
std::vector<double> field_values(const State& state, Field field);
std::vector<double> field_weights(const MassGrid& grid, Field field);

/// ||w||_{L^q} with the given weights; q = inf uses max |w|.
double space_norm(std::span<const double> values, std::span<const double> weights, double q);

/// L^r in time of the per-snapshot L^q norms.
double mixed_norm(const SpaceTimeSamples& samples, const NormSpec& spec);

/// mixed_norm of one trajectory field after checking (q, r) against `context`.
double mixed_norm(const Trajectory& traj, Field field, const NormSpec& spec,
                  NormContext context = NormContext::Unconstrained,
                  std::optional<double> eps = std::nullopt);

}  // namespace mhd1d
