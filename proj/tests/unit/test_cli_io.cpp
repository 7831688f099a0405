#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "mhd1d/commands.hpp"
#include "mhd1d/config.hpp"
#include "mhd1d/errors.hpp"
#include "mhd1d/io.hpp"
#include "mhd1d/presets.hpp"

using namespace mhd1d;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory under the system temp dir.
fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mhd1d_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string key_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("parse_config") {
  SUBCASE("minimal config gets defaults") {
    const auto c = parse_config("grid.n = 16\ninit.preset = equilibrium\n");
    CHECK(*c.n == 16);
    CHECK(c.scheme.cfl_safety == 0.4);
    CHECK(c.scheme.theta_step_mode == ThetaStepMode::Implicit);
    CHECK(c.params.R == 1.0);
    CHECK(c.stability.qs.size() == 1);
    CHECK(std::isinf(c.stability.qs[0]));
  }
  SUBCASE("comments, spacing, lists") {
    const auto c = parse_config(
        "# header\n  grid.n=8   # trailing\n\ninit.preset = smooth\nstability.delta = 0.1, 0.01\n"
        "stability.q = inf, 2\ntime.theta_step_mode = explicit\nconvergence.levels = 8,16,32\n");
    CHECK(c.stability.deltas == std::vector<double>{0.1, 0.01});
    CHECK(c.stability.qs.size() == 2);
    CHECK(c.scheme.theta_step_mode == ThetaStepMode::Explicit);
    CHECK(c.convergence_levels == std::vector<std::size_t>{8, 16, 32});
  }
  SUBCASE("errors name the key") {
    CHECK(key_of("grid.n = 8\ninit.preset = smooth\ninit.file = x.csv\n") == "init");
    CHECK(key_of("grid.n = 8\n") == "init");
    CHECK(key_of("init.preset = smooth\n") == "grid.n");
    CHECK(key_of("grid.n = 8\ninit.preset = smooth\nparams.mu = -1\n") == "params.mu");
    CHECK(key_of("grid.n = 8\ninit.preset = smooth\nparams.kappa = 0\n") == "params.kappa");
    CHECK(key_of("grid.n = 8\ninit.preset = smooth\ntime.cfl_safety = 2\n") == "time.cfl_safety");
    CHECK(key_of("grid.n = 8\ninit.preset = smooth\ngrid.m = 3\n") == "grid.m");
    CHECK(key_of("grid.n = 8\ngrid.n = 9\ninit.preset = smooth\n") == "grid.n");
    CHECK(key_of("grid.n = x\ninit.preset = smooth\n") == "grid.n");
    CHECK(key_of("grid.n = 8\ninit.preset = smooth\nmollifier.epsilon = 1\n") == "mollifier.epsilon");
    CHECK(key_of("grid.n = 8\ninit.preset = smooth\nstability.eps = 0.7\n") == "stability");
    CHECK(key_of("grid.n = 8\ninit.preset = smooth\nstability.r = 2\n") == "stability");
    CHECK(key_of("grid.n = 8\ninit.preset = smooth\nstability.field = u_x\n") == "stability.field");
    CHECK(key_of("grid.n = 8\ninit.preset = smooth\nconvergence.levels = 8, 16, 24\n") ==
          "convergence.levels");
    CHECK(key_of("grid.n = 8\ninit.preset = smooth\ntime.theta_step_mode = crank\n") ==
          "time.theta_step_mode");
    CHECK(key_of("grid.n = 8\ninit.preset = smooth\nstability.r = 1.6\n") == "<accepted>");
  }
  SUBCASE("render round trip") {
    const auto c = parse_config(
        "grid.n = 12\ninit.preset = rough-b\ntime.t_end = 0.3\nparams.cv = 2.5\n"
        "mollifier.epsilon = 0.05\nstability.q = inf, 2\n");
    const auto text = render_config(c);
    CHECK(render_config(parse_config(text)) == text);
  }
}

TEST_CASE("presets") {
  const auto g = MassGrid::uniform(64);
  const auto eq = load_preset("equilibrium", g);
  CHECK(eq.m == 1.0);
  CHECK(eq.M == 1.0);
  const auto rb = load_preset("rough-b", g);
  double bmax = 0.0;
  for (double b : rb.b0) bmax = std::max(bmax, std::abs(b));
  CHECK(bmax == 2.0);
  const auto sm = load_preset("smooth", g);
  CHECK(sm.u0.front() == 0.0);
  CHECK(sm.u0.back() == 0.0);
  for (const auto& name : preset_names()) {
    const auto d = load_preset(name, MassGrid::uniform(33));
    double vol = 0.0;
    for (double t : d.tau0) vol += t / 33.0;
    CHECK(vol == doctest::Approx(1.0).epsilon(1e-3));
  }
  CHECK_THROWS_AS(load_preset("vortex", g), ConfigError);
}

TEST_CASE("file formats") {
  const fs::path dir = scratch("formats");
  const auto g = std::make_shared<const MassGrid>(MassGrid::uniform(16));
  const auto data = load_preset("smooth", *g);

  SUBCASE("initial data round trip infers the grid") {
    write_text_atomic(dir / "init.csv", initial_csv(data, *g));
    CHECK_FALSE(fs::exists(dir / "init.csv.partial"));
    const auto loaded = read_initial_csv(dir / "init.csv");
    CHECK(*loaded.grid == *g);
    CHECK(loaded.data.tau0 == data.tau0);
    CHECK(loaded.data.theta0 == data.theta0);
    CHECK(loaded.data.u0.front() == 0.0);
    CHECK(loaded.data.u0.back() == 0.0);
  }
  SUBCASE("snapshots are bit-exact") {
    SchemeConfig cfg;
    cfg.t_end = 0.05;
    const State s = run(data, g, FluidParameters{}, cfg).snapshots.back();
    write_text_atomic(dir / "snap_1.csv", snapshot_csv(s));
    write_text_atomic(dir / "snap_1_nodes.csv", snapshot_nodes_csv(s));
    const State r = read_snapshot(dir / "snap_1.csv");
    CHECK(r.tau == s.tau);
    CHECK(r.theta == s.theta);
    CHECK(r.u == s.u);
    fs::remove(dir / "snap_1_nodes.csv");
    const State r2 = read_snapshot(dir / "snap_1.csv");
    for (std::size_t j = 0; j < r2.u.size(); ++j) CHECK(r2.u[j] == doctest::Approx(s.u[j]).epsilon(1e-12).scale(1e-12));
  }
  SUBCASE("bad inputs") {
    write_text_atomic(dir / "bad.csv", "x,tau0,u0,b0\n0.5,1,0,1\n");
    CHECK_THROWS_AS(read_initial_csv(dir / "bad.csv"), ConfigError);
    write_text_atomic(dir / "neg.csv", "x,tau0,u0,b0,theta0\n0.25,1,0,1,1\n0.75,-1,0,1,1\n");
    CHECK_THROWS_AS(read_initial_csv(dir / "neg.csv"), ConfigError);
    CHECK_THROWS_AS(read_initial_csv(dir / "missing.csv"), IoError);
    CHECK_THROWS_AS(write_text_atomic(dir / "no" / "such" / "file.csv", "x"), IoError);
  }
  SUBCASE("17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  }
}

TEST_CASE("run command outputs") {
  const fs::path dir = scratch("run");
  write_text_atomic(dir / "eq.cfg",
                    "grid.n = 16\ninit.preset = equilibrium\ntime.t_end = 1\n"
                    "output.snapshot_interval = 0.5\n");
  std::ostringstream log;
  REQUIRE(cmd_run(dir / "eq.cfg", dir / "out", log) == 0);
  const auto manifest = read_manifest(dir / "out");
  std::size_t snaps = 0;
  bool has_diag = false;
  for (const auto& e : manifest) {
    if (e.name.rfind("snap_", 0) == 0 && e.name.find("_nodes") == std::string::npos) ++snaps;
    has_diag = has_diag || e.name == "diagnostics.csv";
  }
  CHECK(snaps == 3);
  CHECK(has_diag);

  SUBCASE("identical reruns give identical manifests") {
    REQUIRE(cmd_run(dir / "eq.cfg", dir / "again", log) == 0);
    CHECK(read_text(dir / "out" / "manifest.json") == read_text(dir / "again" / "manifest.json"));
  }
  SUBCASE("verify passes and catches tampering") {
    std::ostringstream out;
    CHECK(cmd_verify(dir / "out", {}, out) == 0);
    CHECK(out.str().find("FAIL") == std::string::npos);
    write_text_atomic(dir / "out" / "snap_1.csv", read_text(dir / "out" / "snap_2.csv") + "\n");
    std::ostringstream bad;
    CHECK(cmd_verify(dir / "out", {}, bad) == 1);
    CHECK(bad.str().find("FAIL manifest_digests") != std::string::npos);
  }
  SUBCASE("t_end = 0 writes one snapshot") {
    write_text_atomic(dir / "zero.cfg", "grid.n = 8\ninit.preset = smooth\ntime.t_end = 0\n");
    REQUIRE(cmd_run(dir / "zero.cfg", dir / "zero", log) == 0);
    CHECK(fs::exists(dir / "zero" / "snap_0.csv"));
    CHECK_FALSE(fs::exists(dir / "zero" / "snap_1.csv"));
  }
  SUBCASE("init.file runs take their grid from the file") {
    const auto g = MassGrid::uniform(12);
    write_text_atomic(dir / "init.csv", initial_csv(load_preset("rough-tau", g), g));
    write_text_atomic(dir / "file.cfg", "init.file = init.csv\ntime.t_end = 0.05\n");
    REQUIRE(cmd_run(dir / "file.cfg", dir / "file", log) == 0);
    CHECK(read_snapshot(dir / "file" / "snap_0.csv").tau.size() == 12);
  }
  SUBCASE("tolerances") {
    const auto tol = parse_tolerances("energy = 1e-6\nvolume=0\n");
    CHECK(tol.energy == 1e-6);
    CHECK(tol.volume == 0.0);
    CHECK_THROWS_AS(parse_tolerances("speed = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_tolerances("energy = -1\n"), ConfigError);
  }
}
