#pragma once

// Subcommands behind the mhd1d executable. Each returns the process exit
// code and throws on configuration, I/O or solver errors.

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>

#include "mhd1d/config.hpp"

namespace mhd1d {

struct PreparedRun {
  std::shared_ptr<const MassGrid> grid;
  InitialData data;
};

/// Initial data and grid for a config (preset or file), mollified when
/// mollifier.epsilon is set.
PreparedRun prepare(const RunConfig& cfg);

/// Output directory: the --out argument if given, else output.dir.
std::filesystem::path resolve_out_dir(const RunConfig& cfg,
                                      const std::optional<std::filesystem::path>& out);

int cmd_run(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out,
            std::ostream& log);

struct VerifyTolerances {
  double volume = 1e-12;         // |V(t) - V(0)|
  double energy = 1e-3;          // |E(t) - E(0)| / E(0)
  double entropy = 1e-4;         // |S(t) - S(0) - dissipation_cum(t)|
  double magnetic_ulps = 8.0;    // |b tau - a0| in units of ulp(a0)
  double consistency = 1e-13;    // snapshot recomputation vs diagnostics.csv
};

/// Keys volume, energy, entropy, magnetic_ulps, consistency.
VerifyTolerances parse_tolerances(std::string_view text);

/// Re-reads an output directory and prints one PASS/FAIL line per check
/// (plus INFO lines). Returns 0 when every check passes, 1 otherwise.
int cmd_verify(const std::filesystem::path& dir, const VerifyTolerances& tol, std::ostream& out);

int cmd_stability(const std::filesystem::path& config,
                  const std::optional<std::filesystem::path>& out, std::ostream& log);

int cmd_convergence(const std::filesystem::path& config,
                    const std::optional<std::filesystem::path>& out, std::ostream& log);

int cmd_transform(const std::filesystem::path& snapshot, const std::filesystem::path& out,
                  std::ostream& log);

}  // namespace mhd1d
