#pragma once

// Flat dotted-key configuration: one `key = value` per line, `#` starts a
// comment. Unknown and repeated keys are rejected. Errors are ConfigError
// carrying the key path.
//
//   grid.n                   cells of the uniform grid (required with init.preset)
//   init.preset | init.file  exactly one
//   time.t_end, time.dt_init, time.cfl_safety, time.theta_step_mode,
//   time.newton_tol, time.newton_max_iter, time.max_dt_halvings
//   params.R, params.cv, params.mu, params.kappa
//   output.dir, output.snapshot_interval
//   mollifier.epsilon        smooth the initial data before running
//   stability.delta          comma-separated list
//   stability.field, stability.shape, stability.q (list, `inf` allowed),
//   stability.r (checked against q and eps), stability.eps
//   convergence.levels       comma-separated cell counts (default n, 2n, 4n)

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mhd1d/mollify.hpp"
#include "mhd1d/solver.hpp"
#include "mhd1d/stability.hpp"

namespace mhd1d {

struct RunConfig {
  std::optional<std::size_t> n;
  FluidParameters params;
  SchemeConfig scheme;
  std::optional<std::string> preset;
  std::optional<std::string> file;
  std::string output_dir;
  std::optional<MollifierConfig> mollifier;
  StabilityLadderSpec stability;
  std::optional<double> stability_r;
  std::vector<std::size_t> convergence_levels;
};

/// The `key = value` layer alone: comments stripped, repeated keys and
/// malformed lines rejected.
std::map<std::string, std::string, std::less<>> parse_key_values(std::string_view text);

RunConfig parse_config(std::string_view text);

/// Reads and parses a file; IoError if unreadable. Relative init.file paths
/// are resolved against the config file's directory.
RunConfig load_config(const std::string& path);

/// Canonical rendering (every key, 17 significant digits), parseable again.
std::string render_config(const RunConfig& cfg);

}  // namespace mhd1d
