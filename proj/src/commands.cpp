#include "mhd1d/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mhd1d/convergence.hpp"
#include "mhd1d/diagnostics.hpp"
#include "mhd1d/digest.hpp"
#include "mhd1d/errors.hpp"
#include "mhd1d/io.hpp"
#include "mhd1d/mollify.hpp"
#include "mhd1d/presets.hpp"
#include "mhd1d/stability.hpp"
#include "mhd1d/transform.hpp"
#include "mhd1d/weak_form.hpp"

namespace mhd1d {

namespace fs = std::filesystem;

namespace {

std::string snap_name(std::size_t k, std::string_view suffix = "") {
  return fmt::format("snap_{}{}.csv", k, suffix);
}

void check_physics(const RunConfig& cfg) {
  try {
    cfg.params.validate();
    cfg.scheme.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

struct Checker {
  std::ostream& out;
  bool ok = true;

  void report(bool pass, std::string_view name, const std::string& detail) {
    ok = ok && pass;
    fmt::print(out, "{} {} {}\n", pass ? "PASS" : "FAIL", name, detail);
  }
};

}  // namespace

PreparedRun prepare(const RunConfig& cfg) {
  PreparedRun p;
  if (cfg.preset) {
    p.grid = std::make_shared<const MassGrid>(MassGrid::uniform(*cfg.n));
    p.data = load_preset(*cfg.preset, *p.grid);
  } else {
    auto loaded = read_initial_csv(*cfg.file);
    if (cfg.n && *cfg.n != loaded.grid->n_cells()) {
      throw ConfigError("grid.n", fmt::format("{} disagrees with the {} cells of init.file", *cfg.n,
                                              loaded.grid->n_cells()));
    }
    p.grid = std::move(loaded.grid);
    p.data = std::move(loaded.data);
  }
  if (cfg.mollifier) p.data = mollify(p.data, *p.grid, *cfg.mollifier);
  return p;
}

fs::path resolve_out_dir(const RunConfig& cfg, const std::optional<fs::path>& out) {
  if (out) return *out;
  if (cfg.output_dir.empty()) throw ConfigError("output.dir", "no output directory (use --out)");
  return cfg.output_dir;
}

int cmd_run(const fs::path& config, const std::optional<fs::path>& out, std::ostream& log) {
  const RunConfig cfg = load_config(config.string());
  check_physics(cfg);
  const PreparedRun prep = prepare(cfg);
  OutputDir dir(resolve_out_dir(cfg, out));

  const Trajectory traj = run(prep.data, prep.grid, cfg.params, cfg.scheme);
  const auto records = diagnostics(traj);

  dir.write("config.txt", render_config(cfg));
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const State& s = traj.snapshots[k];
    dir.write(snap_name(k), snapshot_csv(s));
    dir.write(snap_name(k, "_nodes"), snapshot_nodes_csv(s));
    dir.write(fmt::format("eulerian_{}.csv", k), eulerian_csv(to_eulerian(s)));
  }
  dir.write("diagnostics.csv", diagnostics_csv(records));

  std::vector<WeakResidual> weak;
  if (traj.final_time() > 0.0) {
    for (const auto& phi : default_momentum_tests(traj.final_time())) {
      weak.push_back({phi, weak_momentum_residual(traj, phi), weak_energy_residual(traj, phi)});
    }
    for (const auto& phi : default_energy_tests(traj.final_time())) {
      std::optional<double> mom;
      if (phi.kind == TestFunctionKind::InteriorBump) mom = weak_momentum_residual(traj, phi);
      weak.push_back({phi, mom, weak_energy_residual(traj, phi)});
    }
  }
  dir.write("weak_residuals.json", weak_residuals_json(weak));
  dir.finish();

  const auto& last = records.back();
  fmt::print(log, "run: {} snapshots to t = {}, volume {:.17g}, energy drift {:.3e}\n",
             traj.snapshots.size(), last.t, last.volume,
             std::abs(last.energy - records.front().energy) / records.front().energy);
  return 0;
}

VerifyTolerances parse_tolerances(std::string_view text) {
  VerifyTolerances tol;
  for (const auto& [key, value] : parse_key_values(text)) {
    double* slot = nullptr;
    if (key == "volume") slot = &tol.volume;
    else if (key == "energy") slot = &tol.energy;
    else if (key == "entropy") slot = &tol.entropy;
    else if (key == "magnetic_ulps") slot = &tol.magnetic_ulps;
    else if (key == "consistency") slot = &tol.consistency;
    else throw ConfigError(key, "unknown tolerance");
    std::size_t used = 0;
    try {
      *slot = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || !(*slot >= 0.0)) {
      throw ConfigError(key, fmt::format("expected a nonnegative number, got '{}'", value));
    }
  }
  return tol;
}

int cmd_verify(const fs::path& dir, const VerifyTolerances& tol, std::ostream& out) {
  Checker c{out};

  const auto manifest = read_manifest(dir);
  {
    std::size_t bad = 0;
    std::string first;
    for (const auto& e : manifest) {
      bool good = false;
      try {
        const std::string text = read_text(dir / e.name);
        good = text.size() == e.bytes && sha256_hex(text) == e.sha256;
      } catch (const IoError&) {
      }
      if (!good && bad++ == 0) first = e.name;
    }
    c.report(bad == 0, "manifest_digests",
             bad == 0 ? fmt::format("files={}", manifest.size())
                      : fmt::format("mismatched={} first={}", bad, first));
  }

  const RunConfig cfg = parse_config(read_text(dir / "config.txt"));
  const FluidParameters& params = cfg.params;
  const auto records = read_diagnostics_csv(dir / "diagnostics.csv");
  if (records.empty()) throw ConfigError("diagnostics.csv", "no rows");

  std::vector<State> snaps;
  for (std::size_t k = 0; fs::exists(dir / snap_name(k)); ++k) {
    snaps.push_back(read_snapshot(dir / snap_name(k), k < records.size() ? records[k].t : 0.0));
  }
  c.report(snaps.size() == records.size(), "snapshot_count",
           fmt::format("snapshots={} diagnostics_rows={}", snaps.size(), records.size()));

  bool times_ok = true;
  for (std::size_t k = 1; k < records.size(); ++k) times_ok = times_ok && records[k].t > records[k - 1].t;
  c.report(times_ok && records.front().t == 0.0, "snapshot_times",
           fmt::format("first={} last={}", records.front().t, records.back().t));

  double vol_dev = 0.0, energy_dev = 0.0, entropy_dev = 0.0, fn_dev = 0.0;
  bool monotone = true, positive = true;
  const double e0 = records.front().energy;
  const double fn0 = records.front().entropy_fn + records.front().dissipation_cum;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    vol_dev = std::max(vol_dev, std::abs(r.volume - records.front().volume));
    energy_dev = std::max(energy_dev, std::abs(r.energy - e0) / e0);
    fn_dev = std::max(fn_dev, std::abs(r.entropy_fn + r.dissipation_cum - fn0) / fn0);
    positive = positive && r.tau_min > 0.0 && r.theta_min > 0.0;
    if (k > 0) monotone = monotone && r.dissipation_cum >= records[k - 1].dissipation_cum;
  }
  c.report(vol_dev <= tol.volume, "volume", fmt::format("max_dev={:.3e} tol={:.3e}", vol_dev, tol.volume));
  c.report(energy_dev <= tol.energy, "energy",
           fmt::format("max_rel_drift={:.3e} tol={:.3e}", energy_dev, tol.energy));
  c.report(monotone, "dissipation_monotone", "");
  c.report(positive, "positivity", "");

  const std::size_t m = std::min(snaps.size(), records.size());
  if (m > 0) {
    double consistency = 0.0, worst_ulps = 0.0;
    bool walls = true;
    const double s0 = physical_entropy(snaps[0], params);
    const auto a0 = snaps[0].magnetic_invariant();
    for (std::size_t k = 0; k < m; ++k) {
      const State& s = snaps[k];
      const auto d = diagnostics(s, records[k].dissipation_cum, params);
      consistency = std::max({consistency, std::abs(d.volume - records[k].volume),
                              std::abs(d.energy - records[k].energy) / e0});
      entropy_dev = std::max(entropy_dev, std::abs(physical_entropy(s, params) - s0 -
                                                   records[k].dissipation_cum));
      walls = walls && s.u.front() == 0.0 && s.u.back() == 0.0;
      const auto a = s.magnetic_invariant();
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double ulp = std::max(std::abs(a0[i]), std::numeric_limits<double>::min()) *
                           std::numeric_limits<double>::epsilon();
        worst_ulps = std::max(worst_ulps, std::abs(a[i] - a0[i]) / ulp);
      }
    }
    c.report(entropy_dev <= tol.entropy, "entropy_balance",
             fmt::format("max_abs_dev={:.3e} tol={:.3e}", entropy_dev, tol.entropy));
    c.report(worst_ulps <= tol.magnetic_ulps, "magnetic_invariant",
             fmt::format("max_ulps={:.1f} tol={:.1f}", worst_ulps, tol.magnetic_ulps));
    c.report(walls, "boundary_velocity", "");
    c.report(consistency <= tol.consistency, "diagnostics_consistency",
             fmt::format("max_dev={:.3e} tol={:.3e}", consistency, tol.consistency));
  }
  fmt::print(out, "INFO entropy_fn_plus_dissipation max_rel_dev={:.3e}\n", fn_dev);
  return c.ok ? 0 : 1;
}

int cmd_stability(const fs::path& config, const std::optional<fs::path>& out, std::ostream& log) {
  const RunConfig cfg = load_config(config.string());
  check_physics(cfg);
  const PreparedRun prep = prepare(cfg);
  OutputDir dir(resolve_out_dir(cfg, out));
  const auto reports = stability_ladder(prep.data, prep.grid, cfg.params, cfg.scheme, cfg.stability);
  dir.write("config.txt", render_config(cfg));
  dir.write("stability_report.json", stability_report_json(reports));
  dir.finish();
  for (const auto& r : reports) {
    fmt::print(log, "stability: delta={:.3e} q={} r={:.6g} lhs={:.6e} rhs={:.6e} ratio={}{}\n",
               r.delta, std::isinf(r.q) ? std::string("inf") : format_double(r.q), r.r,
               r.lhs.total(), r.rhs.total(), r.ratio ? fmt::format("{:.6g}", *r.ratio) : "undefined",
               r.uniqueness_violation ? " UNIQUENESS-VIOLATION" : "");
  }
  return 0;
}

int cmd_convergence(const fs::path& config, const std::optional<fs::path>& out, std::ostream& log) {
  const RunConfig cfg = load_config(config.string());
  check_physics(cfg);
  if (!cfg.preset) throw ConfigError("init.preset", "a convergence study needs a preset");
  std::vector<std::size_t> levels = cfg.convergence_levels;
  if (levels.empty()) levels = {*cfg.n, 2 * *cfg.n, 4 * *cfg.n};
  OutputDir dir(resolve_out_dir(cfg, out));
  const auto rows = convergence_study(
      [&](const MassGrid& g) {
        InitialData d = load_preset(*cfg.preset, g);
        if (cfg.mollifier) d = mollify(d, g, *cfg.mollifier);
        return d;
      },
      levels, cfg.params, cfg.scheme);
  dir.write("config.txt", render_config(cfg));
  dir.write("convergence.csv", convergence_csv(rows));
  dir.finish();
  for (Field f : {Field::Tau, Field::U, Field::Theta}) {
    const auto order = observed_order(rows, f);
    const bool exact = std::any_of(rows.begin(), rows.end(),
                                   [&](const ConvergenceRow& r) { return r.field == f && r.exact; });
    fmt::print(log, "convergence: {} order {}\n", field_name(f),
               exact ? "exact" : order ? fmt::format("{:.3f}", *order) : "n/a");
  }
  return 0;
}

int cmd_transform(const fs::path& snapshot, const fs::path& out, std::ostream& log) {
  const State s = read_snapshot(snapshot);
  const EulerianProfile p = to_eulerian(s);
  write_text_atomic(out, eulerian_csv(p));
  fmt::print(log, "transform: {} cells, physical length {:.17g}\n", p.rho.size(), p.length());
  return 0;
}

}  // namespace mhd1d
