#include "mhd1d/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "mhd1d/digest.hpp"
#include "mhd1d/errors.hpp"
#include "mhd1d/parallel.hpp"

namespace mhd1d {

namespace {

// Fraction of [lo, hi] lying in x > 1/2.
double upper_fraction(double lo, double hi) {
  return std::clamp((hi - std::max(lo, 0.5)) / (hi - lo), 0.0, 1.0);
}

void append_values(std::string& out, std::string_view name, const std::vector<double>& v) {
  out += name;
  for (double x : v) out += fmt::format(" {:.17g}", x);
  out += '\n';
}

double sup_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

PerturbationShape parse_shape(std::string_view name) {
  if (name == "shift") return PerturbationShape::Shift;
  if (name == "sine") return PerturbationShape::Sine;
  if (name == "jump") return PerturbationShape::Jump;
  throw std::invalid_argument(fmt::format("unknown perturbation shape '{}'", name));
}

std::string_view shape_name(PerturbationShape shape) {
  switch (shape) {
    case PerturbationShape::Shift: return "shift";
    case PerturbationShape::Sine: return "sine";
    case PerturbationShape::Jump: return "jump";
  }
  return "?";
}

InitialData perturb(const InitialData& data, const MassGrid& grid, Field field,
                    PerturbationShape shape, double delta) {
  using std::numbers::pi;
  InitialData out = data;
  if (field == Field::U) {
    for (std::size_t j = 1; j + 1 < grid.n_nodes(); ++j) {
      const double y = grid.node(j);
      double g = 1.0;
      if (shape == PerturbationShape::Sine) g = std::sin(pi * y);
      if (shape == PerturbationShape::Jump) g = y > 0.5 ? 1.0 : 0.0;
      out.u0[j] += delta * g;
    }
    return validate_initial(std::move(out), grid);
  }
  std::vector<double>* target = nullptr;
  switch (field) {
    case Field::Tau: target = &out.tau0; break;
    case Field::Theta: target = &out.theta0; break;
    case Field::B: target = &out.b0; break;
    default:
      throw std::invalid_argument(
          fmt::format("cannot perturb derived field '{}'", field_name(field)));
  }
  for (std::size_t i = 0; i < grid.n_cells(); ++i) {
    double g = 1.0;
    if (shape == PerturbationShape::Sine) g = std::sin(2.0 * pi * grid.center(i));
    if (shape == PerturbationShape::Jump) g = upper_fraction(grid.node(i), grid.node(i + 1));
    (*target)[i] += delta * g;
  }
  return validate_initial(std::move(out), grid);
}

std::string run_digest(const InitialData& init, const MassGrid& grid,
                       const FluidParameters& params, const SchemeConfig& config) {
  std::string text;
  text += fmt::format("params {:.17g} {:.17g} {:.17g} {:.17g}\n", params.R, params.cv, params.mu,
                      params.kappa);
  text += fmt::format("scheme {:.17g} {:.17g} {:.17g} {} {:.17g} {} {:.17g} {}\n", config.dt_init,
                      config.cfl_safety, config.t_end,
                      config.theta_step_mode == ThetaStepMode::Implicit ? "implicit" : "explicit",
                      config.newton_tol, config.newton_max_iter, config.snapshot_interval,
                      config.max_dt_halvings);
  append_values(text, "nodes", {grid.nodes().begin(), grid.nodes().end()});
  append_values(text, "tau0", init.tau0);
  append_values(text, "u0", init.u0);
  append_values(text, "b0", init.b0);
  append_values(text, "theta0", init.theta0);
  return sha256_hex(text);
}

StabilityReport compare_runs(const Trajectory& base, const Trajectory& perturbed,
                             const InitialData& base_init, const InitialData& perturbed_init,
                             double delta, double q, double eps) {
  const NormSpec spec = stability_norm_spec(q, eps);
  if (!(*base.grid == *perturbed.grid)) {
    throw std::invalid_argument("stability runs use different grids");
  }
  if (base.times() != perturbed.times()) {
    throw std::invalid_argument("stability runs have different snapshot times");
  }
  const MassGrid& grid = *base.grid;
  const std::size_t n = grid.n_cells();

  StabilityReport rep;
  rep.delta = delta;
  rep.q = spec.q;
  rep.r = spec.r;
  rep.eps = eps;

  SpaceTimeSamples d_theta;
  d_theta.weights = field_weights(grid, Field::Theta);
  double u_sup_l2 = 0.0;
  std::vector<double> ux_sq(base.snapshots.size());
  for (std::size_t k = 0; k < base.snapshots.size(); ++k) {
    const State& s = base.snapshots[k];
    const State& p = perturbed.snapshots[k];
    rep.lhs.tau = std::max(rep.lhs.tau, sup_diff(s.tau, p.tau));
    double u2 = 0.0;
    for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
      u2 += grid.dual_width(j) * (s.u[j] - p.u[j]) * (s.u[j] - p.u[j]);
    }
    u_sup_l2 = std::max(u_sup_l2, std::sqrt(u2));
    std::vector<double> dth(n);
    for (std::size_t i = 0; i < n; ++i) {
      rep.lhs.b = std::max(rep.lhs.b, std::abs(s.b(i) - p.b(i)));
      const double dux = s.velocity_gradient(i) - p.velocity_gradient(i);
      ux_sq[k] += grid.width(i) * dux * dux;
      dth[i] = s.theta[i] - p.theta[i];
    }
    d_theta.times.push_back(s.t);
    d_theta.values.push_back(std::move(dth));
  }
  double ux_l2l2 = 0.0;
  for (std::size_t k = 1; k < ux_sq.size(); ++k) {
    ux_l2l2 += 0.5 * (base.snapshots[k].t - base.snapshots[k - 1].t) * (ux_sq[k - 1] + ux_sq[k]);
  }
  rep.lhs.u = u_sup_l2 + std::sqrt(ux_l2l2);
  rep.lhs.theta = mixed_norm(d_theta, spec);

  rep.rhs.tau = sup_diff(base_init.tau0, perturbed_init.tau0);
  rep.rhs.b = sup_diff(base_init.b0, perturbed_init.b0);
  double u0 = 0.0;
  for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
    const double d = base_init.u0[j] - perturbed_init.u0[j];
    u0 += grid.dual_width(j) * d * d;
  }
  rep.rhs.u = std::sqrt(u0);
  for (std::size_t i = 0; i < n; ++i) {
    rep.rhs.theta += grid.width(i) * std::abs(base_init.theta0[i] - perturbed_init.theta0[i]);
  }

  const double lhs = rep.lhs.total();
  const double rhs = rep.rhs.total();
  if (rhs > 0.0) rep.ratio = lhs / rhs;
  rep.uniqueness_violation = rhs == 0.0 && lhs > 0.0;
  rep.digest_base = run_digest(base_init, grid, base.params, base.config);
  rep.digest_perturbed = run_digest(perturbed_init, grid, perturbed.params, perturbed.config);
  return rep;
}

StabilityReport stability_experiment(const InitialData& base, const InitialData& perturbed,
                                     std::shared_ptr<const MassGrid> grid,
                                     const FluidParameters& params, const SchemeConfig& config,
                                     double q, double eps, double delta) {
  stability_norm_spec(q, eps);
  const InitialData* inits[2] = {&base, &perturbed};
  std::vector<Trajectory> runs(2);
  parallel_for(2, [&](std::size_t i) { runs[i] = run(*inits[i], grid, params, config); });
  return compare_runs(runs[0], runs[1], base, perturbed, delta, q, eps);
}

std::vector<StabilityReport> stability_ladder(const InitialData& base,
                                              std::shared_ptr<const MassGrid> grid,
                                              const FluidParameters& params,
                                              const SchemeConfig& config,
                                              const StabilityLadderSpec& spec) {
  for (double q : spec.qs) stability_norm_spec(q, spec.eps);
  std::vector<InitialData> inits{base};
  for (double d : spec.deltas) inits.push_back(perturb(base, *grid, spec.field, spec.shape, d));
  std::vector<Trajectory> runs(inits.size());
  parallel_for(inits.size(), [&](std::size_t i) { runs[i] = run(inits[i], grid, params, config); });

  std::vector<StabilityReport> out;
  for (std::size_t k = 0; k < spec.deltas.size(); ++k) {
    for (double q : spec.qs) {
      out.push_back(compare_runs(runs[0], runs[k + 1], inits[0], inits[k + 1], spec.deltas[k], q,
                                 spec.eps));
    }
  }
  return out;
}

}  // namespace mhd1d
