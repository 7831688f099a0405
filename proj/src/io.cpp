#include "mhd1d/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "mhd1d/digest.hpp"
#include "mhd1d/errors.hpp"

namespace mhd1d {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

// Grid whose cell centers are `x`. Exactly uniform when the centers agree
// with (i + 1/2)/n to round-off.
std::shared_ptr<const MassGrid> grid_from_centers(const std::vector<double>& x,
                                                  const std::string& where) {
  const std::size_t n = x.size();
  if (n == 0) throw ConfigError(where, "no data rows");
  bool uniform = true;
  for (std::size_t i = 0; i < n && uniform; ++i) {
    uniform = std::abs(x[i] - (i + 0.5) / static_cast<double>(n)) <= 1e-12;
  }
  if (uniform) return std::make_shared<const MassGrid>(MassGrid::uniform(n));
  std::vector<double> nodes(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) nodes[i + 1] = 2.0 * x[i] - nodes[i];
  if (std::abs(nodes[n] - 1.0) > 1e-9) {
    throw ConfigError(where, fmt::format("cell centers do not tile [0,1] (last node at {})", nodes[n]));
  }
  nodes[n] = 1.0;
  try {
    return std::make_shared<const MassGrid>(MassGrid::from_nodes(std::move(nodes)));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  }
}

std::vector<double> column(const CsvTable& t, std::size_t c) {
  std::vector<double> out;
  out.reserve(t.rows.size());
  for (const auto& r : t.rows) out.push_back(r[c]);
  return out;
}

json test_function_json(const TestFunction& phi) {
  return {{"x0", phi.x0},
          {"t0", phi.t0},
          {"rx", phi.rx},
          {"rt", phi.rt},
          {"kind", phi.kind == TestFunctionKind::InteriorBump ? "interior" : "boundary-admissible"},
          {"amplitude", phi.amplitude}};
}

json norms_json(const StabilityNorms& n) {
  return {{"tau", n.tau}, {"u", n.u}, {"b", n.b}, {"theta", n.theta}, {"total", n.total()}};
}

json exponent_json(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

}  // namespace

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const fs::path& path, std::string_view content) {
  fs::path partial = path;
  partial += ".partial";
  {
    std::ofstream out(partial, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write '{}'", partial.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError(fmt::format("write to '{}' failed", partial.string()));
  }
  std::error_code ec;
  fs::rename(partial, path, ec);
  if (ec) throw IoError(fmt::format("cannot rename '{}': {}", partial.string(), ec.message()));
}

CsvTable read_csv(const fs::path& path, std::string_view expected) {
  const std::string text = read_text(path);
  std::istringstream in(text);
  std::string line;
  CsvTable t;
  const std::string where = path.filename().string();
  if (!std::getline(in, line)) throw ConfigError(where, "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (!expected.empty() && line != expected) {
    throw ConfigError(where, fmt::format("header '{}' does not match '{}'", line, expected));
  }
  for (auto h : split(line)) t.header.emplace_back(h);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw ConfigError(where, fmt::format("line {}: expected {} columns, got {}", lineno,
                                           t.header.size(), cells.size()));
    }
    std::vector<double> row;
    for (auto c : cells) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc{} || ptr != c.data() + c.size()) {
        throw ConfigError(where, fmt::format("line {}: bad number '{}'", lineno, c));
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

LoadedInitial read_initial_csv(const fs::path& path) {
  const CsvTable t = read_csv(path, "x,tau0,u0,b0,theta0");
  const std::string where = "init.file";
  const auto x = column(t, 0);
  LoadedInitial out;
  out.grid = grid_from_centers(x, where);
  const MassGrid& g = *out.grid;
  const std::size_t n = g.n_cells();
  out.data.tau0 = column(t, 1);
  out.data.b0 = column(t, 3);
  out.data.theta0 = column(t, 4);
  const auto uc = column(t, 2);
  out.data.u0.assign(n + 1, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    const double s = (g.node(j) - g.center(j - 1)) / (g.center(j) - g.center(j - 1));
    out.data.u0[j] = uc[j - 1] + s * (uc[j] - uc[j - 1]);
  }
  try {
    out.data = validate_initial(std::move(out.data), g);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  }
  return out;
}

std::string initial_csv(const InitialData& data, const MassGrid& grid) {
  std::string out = "x,tau0,u0,b0,theta0\n";
  for (std::size_t i = 0; i < grid.n_cells(); ++i) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", grid.center(i), data.tau0[i],
                       0.5 * (data.u0[i] + data.u0[i + 1]), data.b0[i], data.theta0[i]);
  }
  return out;
}

std::string snapshot_csv(const State& s) {
  const MassGrid& g = s.mesh();
  std::string out = "x,tau,u,theta,b\n";
  for (std::size_t i = 0; i < g.n_cells(); ++i) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", g.center(i), s.tau[i],
                       0.5 * (s.u[i] + s.u[i + 1]), s.theta[i], s.b(i));
  }
  return out;
}

std::string snapshot_nodes_csv(const State& s) {
  const MassGrid& g = s.mesh();
  std::string out = "y,u\n";
  for (std::size_t j = 0; j < g.n_nodes(); ++j) {
    out += fmt::format("{:.17g},{:.17g}\n", g.node(j), s.u[j]);
  }
  return out;
}

State read_snapshot(const fs::path& path, double t) {
  const CsvTable cells = read_csv(path, "x,tau,u,theta,b");
  const std::string where = path.filename().string();
  State s;
  s.t = t;
  s.grid = grid_from_centers(column(cells, 0), where);
  const std::size_t n = s.grid->n_cells();
  s.tau = column(cells, 1);
  s.theta = column(cells, 3);
  const auto b = column(cells, 4);
  auto a = std::make_shared<std::vector<double>>(n);
  for (std::size_t i = 0; i < n; ++i) (*a)[i] = b[i] * s.tau[i];
  s.a = std::move(a);

  fs::path nodes = path;
  nodes.replace_filename(path.stem().string() + "_nodes.csv");
  if (fs::exists(nodes)) {
    const CsvTable nt = read_csv(nodes, "y,u");
    if (nt.rows.size() != n + 1) {
      throw ConfigError(nodes.filename().string(), "node count does not match the cells");
    }
    s.u = column(nt, 1);
  } else {
    const auto ubar = column(cells, 2);
    s.u.assign(n + 1, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) s.u[i + 1] = 2.0 * ubar[i] - s.u[i];
  }
  try {
    s.check_invariants();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  }
  return s;
}

std::string eulerian_csv(const EulerianProfile& p) {
  std::string out = "x,rho,u,theta,b\n";
  for (std::size_t i = 0; i < p.rho.size(); ++i) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", p.x_centers[i], p.rho[i],
                       0.5 * (p.u[i] + p.u[i + 1]), p.theta[i], p.b[i]);
  }
  return out;
}

std::string diagnostics_csv(const std::vector<DiagnosticRecord>& records) {
  std::string out = "t,volume,energy,entropy_fn,dissipation_cum,tau_min,tau_max,theta_min,u_l2\n";
  for (const auto& r : records) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                       r.t, r.volume, r.energy, r.entropy_fn, r.dissipation_cum, r.tau_min,
                       r.tau_max, r.theta_min, r.u_l2);
  }
  return out;
}

std::vector<DiagnosticRecord> read_diagnostics_csv(const fs::path& path) {
  const CsvTable t = read_csv(
      path, "t,volume,energy,entropy_fn,dissipation_cum,tau_min,tau_max,theta_min,u_l2");
  std::vector<DiagnosticRecord> out;
  for (const auto& r : t.rows) {
    out.push_back({r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8]});
  }
  return out;
}

std::string weak_residuals_json(const std::vector<WeakResidual>& residuals) {
  json arr = json::array();
  for (const auto& w : residuals) {
    json e = test_function_json(w.phi);
    e["residual_momentum"] = w.momentum ? json(*w.momentum) : json(nullptr);
    e["residual_energy"] = w.energy;
    arr.push_back(std::move(e));
  }
  return arr.dump(2) + "\n";
}

std::string stability_report_json(const std::vector<StabilityReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({{"delta", r.delta},
                   {"lhs_norms", norms_json(r.lhs)},
                   {"rhs_norms", norms_json(r.rhs)},
                   {"ratio", r.ratio ? json(*r.ratio) : json(nullptr)},
                   {"q", exponent_json(r.q)},
                   {"r", exponent_json(r.r)},
                   {"eps", r.eps},
                   {"uniqueness_violation", r.uniqueness_violation},
                   {"config_digest_base", r.digest_base},
                   {"config_digest_perturbed", r.digest_perturbed}});
  }
  return arr.dump(2) + "\n";
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "field,h_coarse,h_fine,error,order\n";
  for (const auto& r : rows) {
    std::string order;
    if (r.exact) order = "exact";
    else if (r.order) order = format_double(*r.order);
    out += fmt::format("{},{:.17g},{:.17g},{:.17g},{}\n", field_name(r.field), r.h_coarse,
                       r.h_fine, r.error, order);
  }
  return out;
}

OutputDir::OutputDir(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    throw IoError(fmt::format("cannot create output directory '{}'", dir_.string()));
  }
}

void OutputDir::write(const std::string& name, std::string_view content) {
  write_text_atomic(dir_ / name, content);
  entries_.emplace_back(name, sha256_hex(content));
  sizes_.push_back(content.size());
}

std::string OutputDir::finish() {
  std::vector<std::size_t> order(entries_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return entries_[a].first < entries_[b].first; });
  json files = json::array();
  for (std::size_t i : order) {
    files.push_back(
        {{"name", entries_[i].first}, {"sha256", entries_[i].second}, {"bytes", sizes_[i]}});
  }
  const std::string text = json{{"files", files}}.dump(2) + "\n";
  write_text_atomic(dir_ / "manifest.json", text);
  return text;
}

std::vector<ManifestEntry> read_manifest(const fs::path& dir) {
  const std::string text = read_text(dir / "manifest.json");
  std::vector<ManifestEntry> out;
  try {
    const json j = json::parse(text);
    for (const auto& f : j.at("files")) {
      out.push_back({f.at("name").get<std::string>(), f.at("sha256").get<std::string>(),
                     f.at("bytes").get<std::size_t>()});
    }
  } catch (const json::exception& e) {
    throw ConfigError("manifest.json", e.what());
  }
  return out;
}

}  // namespace mhd1d
