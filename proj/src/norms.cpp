#include "mhd1d/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "mhd1d/diagnostics.hpp"
#include "mhd1d/errors.hpp"
#include "mhd1d/solver.hpp"

namespace mhd1d {

namespace {

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

void require_range(double p, double lo, double hi, const char* name) {
  if (!(p >= lo && p <= hi)) {
    throw ConstraintError(fmt::format("{} = {} outside [{}, {}]", name, p, lo, hi));
  }
}

}  // namespace

void check_admissible(const NormSpec& spec, NormContext context, std::optional<double> eps) {
  require_range(spec.q, 1.0, kInfinity, "q");
  require_range(spec.r, 1.0, kInfinity, "r");
  const double lhs = 0.5 * inv(spec.q) + inv(spec.r);
  switch (context) {
    case NormContext::Unconstrained:
      return;
    case NormContext::Temperature:
      if (!(lhs > 0.5)) {
        throw ConstraintError(
            fmt::format("1/(2q0) + 1/r0 > 1/2 violated: q0 = {}, r0 = {} gives {}", spec.q,
                        spec.r, lhs));
      }
      return;
    case NormContext::TemperatureGradient:
      require_range(spec.q, 1.0, 2.0, "q1");
      require_range(spec.r, 1.0, 2.0, "r1");
      if (!(lhs > 1.0)) {
        throw ConstraintError(fmt::format(
            "1/(2q1) + 1/r1 > 1 violated: q1 = {}, r1 = {} gives {}", spec.q, spec.r, lhs));
      }
      return;
    case NormContext::Stability: {
      if (!eps) throw ConstraintError("stability norm needs eps");
      if (!(*eps > 0.0 && *eps < 0.5)) {
        throw ConstraintError(fmt::format("eps = {} outside (0, 1/2)", *eps));
      }
      require_range(spec.q, 2.0, kInfinity, "q");
      const double target = 0.5 * (1.0 + *eps);
      if (std::abs(lhs - target) > 1e-12) {
        throw ConstraintError(fmt::format(
            "1/(2q) + 1/r = (1+eps)/2 violated: q = {}, r = {} gives {} != {}", spec.q, spec.r,
            lhs, target));
      }
      return;
    }
  }
}

NormSpec stability_norm_spec(double q, double eps) {
  NormSpec spec{q, 1.0 / (0.5 * (1.0 + eps) - 0.5 * inv(q))};
  check_admissible(spec, NormContext::Stability, eps);
  return spec;
}

Field parse_field(std::string_view name) {
  if (name == "tau") return Field::Tau;
  if (name == "u") return Field::U;
  if (name == "theta") return Field::Theta;
  if (name == "b") return Field::B;
  if (name == "u_x") return Field::Ux;
  if (name == "theta_x") return Field::ThetaX;
  throw std::invalid_argument(fmt::format("unknown field '{}'", name));
}

std::string_view field_name(Field f) {
  switch (f) {
    case Field::Tau: return "tau";
    case Field::U: return "u";
    case Field::Theta: return "theta";
    case Field::B: return "b";
    case Field::Ux: return "u_x";
    case Field::ThetaX: return "theta_x";
  }
  return "?";
}

std::vector<double> field_values(const State& state, Field field) {
  const std::size_t n = state.mesh().n_cells();
  switch (field) {
    case Field::Tau: return state.tau;
    case Field::Theta: return state.theta;
    case Field::U: return state.u;
    case Field::ThetaX: return face_theta_gradient(state);
    case Field::B: {
      std::vector<double> b(n);
      for (std::size_t i = 0; i < n; ++i) b[i] = state.b(i);
      return b;
    }
    case Field::Ux: {
      std::vector<double> ux(n);
      for (std::size_t i = 0; i < n; ++i) ux[i] = state.velocity_gradient(i);
      return ux;
    }
  }
  return {};
}

std::vector<double> field_weights(const MassGrid& grid, Field field) {
  switch (field) {
    case Field::U: {
      auto d = grid.dual_widths();
      return {d.begin(), d.end()};
    }
    case Field::ThetaX: {
      auto d = grid.dual_widths();
      std::vector<double> w(d.begin(), d.end());
      w.front() = 0.0;
      w.back() = 0.0;
      return w;
    }
    default: {
      auto h = grid.widths();
      return {h.begin(), h.end()};
    }
  }
}

SpaceTimeSamples sample_field(const Trajectory& traj, Field field) {
  SpaceTimeSamples s;
  s.weights = field_weights(*traj.grid, field);
  for (const auto& snap : traj.snapshots) {
    s.times.push_back(snap.t);
    s.values.push_back(field_values(snap, field));
  }
  return s;
}

double space_norm(std::span<const double> values, std::span<const double> weights, double q) {
  if (values.size() != weights.size()) throw std::invalid_argument("values/weights size mismatch");
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (weights[i] > 0.0) m = std::max(m, std::abs(values[i]));
    }
    return m;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += weights[i] * std::pow(std::abs(values[i]), q);
  }
  return std::pow(sum, 1.0 / q);
}

double mixed_norm(const SpaceTimeSamples& samples, const NormSpec& spec) {
  const std::size_t nt = samples.times.size();
  if (nt == 0 || samples.values.size() != nt) {
    throw InsufficientData("mixed norm needs at least one snapshot");
  }
  std::vector<double> spatial(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    spatial[k] = space_norm(samples.values[k], samples.weights, spec.q);
  }
  if (std::isinf(spec.r)) return *std::max_element(spatial.begin(), spatial.end());
  double sum = 0.0;
  for (std::size_t k = 1; k < nt; ++k) {
    const double dt = samples.times[k] - samples.times[k - 1];
    sum += 0.5 * dt * (std::pow(spatial[k - 1], spec.r) + std::pow(spatial[k], spec.r));
  }
  return std::pow(sum, 1.0 / spec.r);
}

double mixed_norm(const Trajectory& traj, Field field, const NormSpec& spec, NormContext context,
                  std::optional<double> eps) {
  check_admissible(spec, context, eps);
  return mixed_norm(sample_field(traj, field), spec);
}

}  // namespace mhd1d
