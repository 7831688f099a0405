#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mhd1d/commands.hpp"
#include "mhd1d/errors.hpp"
#include "mhd1d/io.hpp"

namespace fs = std::filesystem;

namespace {

// One line, `error: <kind>: <message>`, newlines flattened.
int fail(const char* kind, const std::string& what, int code) {
  std::string msg = what;
  for (char& ch : msg) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  std::fprintf(stderr, "error: %s: %s\n", kind, msg.c_str());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D compressible heat-conducting MHD in Lagrangian mass coordinates"};
  app.require_subcommand(1);

  std::string config, out, tolerances, snapshot;

  auto* run = app.add_subcommand("run", "integrate one configuration and write all outputs");
  run->add_option("--config", config, "config file")->required();
  run->add_option("--out", out, "output directory (overrides output.dir)");

  auto* verify = app.add_subcommand("verify", "re-read an output directory and check invariants");
  verify->add_option("--out", out, "output directory of a previous run")->required();
  verify->add_option("--tolerances", tolerances, "key = value tolerance overrides");

  auto* stability = app.add_subcommand("stability", "perturbation ladder and stability ratios");
  stability->add_option("--config", config, "config file")->required();
  stability->add_option("--out", out, "output directory (overrides output.dir)");

  auto* convergence = app.add_subcommand("convergence", "self-convergence on nested grids");
  convergence->add_option("--config", config, "config file")->required();
  convergence->add_option("--out", out, "output directory (overrides output.dir)");

  auto* transform = app.add_subcommand("transform", "Eulerian profile of one snapshot");
  transform->add_option("--snapshot", snapshot, "snap_<k>.csv")->required();
  transform->add_option("--out", out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  const std::optional<fs::path> out_dir =
      out.empty() ? std::nullopt : std::optional<fs::path>(out);
  try {
    if (*run) return mhd1d::cmd_run(config, out_dir, std::cout);
    if (*verify) {
      mhd1d::VerifyTolerances tol;
      if (!tolerances.empty()) tol = mhd1d::parse_tolerances(mhd1d::read_text(tolerances));
      return mhd1d::cmd_verify(out, tol, std::cout);
    }
    if (*stability) return mhd1d::cmd_stability(config, out_dir, std::cout);
    if (*convergence) return mhd1d::cmd_convergence(config, out_dir, std::cout);
    if (*transform) return mhd1d::cmd_transform(snapshot, out, std::cout);
  } catch (const mhd1d::ConfigError& e) {
    return fail("config", e.what(), 3);
  } catch (const mhd1d::IoError& e) {
    return fail("io", e.what(), 4);
  } catch (const mhd1d::PositivityFailure& e) {
    return fail("positivity", e.what(), 5);
  } catch (const mhd1d::IterationFailure& e) {
    return fail("iteration", e.what(), 5);
  } catch (const mhd1d::ConstraintError& e) {
    return fail("constraint", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 1;
}
