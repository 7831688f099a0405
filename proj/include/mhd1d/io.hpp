#pragma once

// File formats. Every floating-point value in CSV and text output is written
// with 17 significant digits, so reading a file back is bit-exact. Files are
// written to `<name>.partial` and renamed into place once complete.

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mhd1d/convergence.hpp"
#include "mhd1d/diagnostics.hpp"
#include "mhd1d/model.hpp"
#include "mhd1d/stability.hpp"
#include "mhd1d/transform.hpp"
#include "mhd1d/weak_form.hpp"

namespace mhd1d {

std::string format_double(double x);

std::string read_text(const std::filesystem::path& path);
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Numeric CSV with a header line. Throws IoError on unreadable files,
/// ConfigError on a header other than `expected` (when given) or bad numbers.
CsvTable read_csv(const std::filesystem::path& path, std::string_view expected = {});

struct LoadedInitial {
  std::shared_ptr<const MassGrid> grid;
  InitialData data;
};

/// Initial data `x,tau0,u0,b0,theta0` at cell centers. The grid is rebuilt
/// from the centers (nodes are midway between them); u0 is interpolated
/// linearly to interior nodes and set to 0 at the walls.
LoadedInitial read_initial_csv(const std::filesystem::path& path);
std::string initial_csv(const InitialData& data, const MassGrid& grid);

/// `x,tau,u,theta,b` per cell, u averaged from the two nodes.
std::string snapshot_csv(const State& state);
/// `y,u` per node.
std::string snapshot_nodes_csv(const State& state);
/// State from snap_<k>.csv and, when present, the sibling snap_<k>_nodes.csv
/// (otherwise u is rebuilt from the cell averages). a = b * tau.
State read_snapshot(const std::filesystem::path& path, double t = 0.0);

/// `x,rho,u,theta,b` at physical cell centers, u averaged from the nodes.
std::string eulerian_csv(const EulerianProfile& profile);

std::string diagnostics_csv(const std::vector<DiagnosticRecord>& records);
std::vector<DiagnosticRecord> read_diagnostics_csv(const std::filesystem::path& path);

struct WeakResidual {
  TestFunction phi;
  std::optional<double> momentum;  // interior bumps only
  double energy = 0.0;
};

std::string weak_residuals_json(const std::vector<WeakResidual>& residuals);
std::string stability_report_json(const std::vector<StabilityReport>& reports);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

/// Collects files written into one output directory and finishes with a
/// manifest.json listing each file's SHA-256 and size, sorted by name.
class OutputDir {
public:
  /// Creates the directory; IoError if that fails.
  explicit OutputDir(std::filesystem::path dir);

  void write(const std::string& name, std::string_view content);
  /// Writes manifest.json and returns its text.
  std::string finish();

  const std::filesystem::path& path() const noexcept { return dir_; }

private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> entries_;  // name, content digest
  std::vector<std::size_t> sizes_;
};

struct ManifestEntry {
  std::string name;
  std::string sha256;
  std::size_t bytes = 0;
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir);

}  // namespace mhd1d
