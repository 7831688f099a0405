#include "mhd1d/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "mhd1d/convergence.hpp"
#include "mhd1d/errors.hpp"

namespace mhd1d {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = v.find(',');
    out.push_back(trim(v.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

double to_double(const std::string& key, std::string_view v) {
  if (v == "inf" || v == "infinity") return kInfinity;
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(key, fmt::format("expected a number, got '{}'", v));
  }
  return out;
}

long long to_integer(const std::string& key, std::string_view v) {
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(key, fmt::format("expected an integer, got '{}'", v));
  }
  return out;
}

double positive(const std::string& key, std::string_view v) {
  const double x = to_double(key, v);
  if (!(x > 0.0) || std::isinf(x)) throw ConfigError(key, fmt::format("must be positive, got {}", v));
  return x;
}

std::size_t positive_count(const std::string& key, std::string_view v) {
  const long long x = to_integer(key, v);
  if (x <= 0) throw ConfigError(key, fmt::format("must be a positive integer, got {}", v));
  return static_cast<std::size_t>(x);
}

std::string g17(double x) {
  if (std::isinf(x)) return "inf";
  return fmt::format("{:.17g}", x);
}

template <class T, class F>
std::string join(const std::vector<T>& v, F&& f) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += f(v[i]);
  }
  return out;
}

}  // namespace

std::map<std::string, std::string, std::less<>> parse_key_values(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view l = line;
    if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value'", lineno));
    }
    std::string key(trim(l.substr(0, eq)));
    std::string value(trim(l.substr(eq + 1)));
    if (key.empty()) throw ConfigError(fmt::format("line {}: empty key", lineno));
    if (value.empty()) throw ConfigError(key, "empty value");
    if (!kv.emplace(key, value).second) throw ConfigError(key, "repeated key");
  }
  return kv;
}

RunConfig parse_config(std::string_view text) {
  const auto kv = parse_key_values(text);
  RunConfig cfg;
  SchemeConfig& s = cfg.scheme;
  for (const auto& [key, value] : kv) {
    const std::string_view v = value;
    if (key == "grid.n") cfg.n = positive_count(key, v);
    else if (key == "time.t_end") {
      s.t_end = to_double(key, v);
      if (!(s.t_end >= 0.0)) throw ConfigError(key, fmt::format("must be nonnegative, got {}", v));
    }
    else if (key == "time.dt_init") s.dt_init = positive(key, v);
    else if (key == "time.cfl_safety") {
      s.cfl_safety = positive(key, v);
      if (s.cfl_safety > 1.0) throw ConfigError(key, fmt::format("must lie in (0, 1], got {}", v));
    }
    else if (key == "time.theta_step_mode") {
      if (v == "implicit") s.theta_step_mode = ThetaStepMode::Implicit;
      else if (v == "explicit") s.theta_step_mode = ThetaStepMode::Explicit;
      else throw ConfigError(key, fmt::format("expected implicit or explicit, got '{}'", v));
    }
    else if (key == "time.newton_tol") s.newton_tol = positive(key, v);
    else if (key == "time.newton_max_iter") s.newton_max_iter = static_cast<int>(positive_count(key, v));
    else if (key == "time.max_dt_halvings") {
      const long long h = to_integer(key, v);
      if (h < 0 || h > 60) throw ConfigError(key, fmt::format("must lie in [0, 60], got {}", v));
      s.max_dt_halvings = static_cast<int>(h);
    }
    else if (key == "params.R") cfg.params.R = positive(key, v);
    else if (key == "params.cv") cfg.params.cv = positive(key, v);
    else if (key == "params.mu") cfg.params.mu = positive(key, v);
    else if (key == "params.kappa") cfg.params.kappa = positive(key, v);
    else if (key == "init.preset") cfg.preset = value;
    else if (key == "init.file") cfg.file = value;
    else if (key == "output.dir") cfg.output_dir = value;
    else if (key == "output.snapshot_interval") s.snapshot_interval = positive(key, v);
    else if (key == "mollifier.epsilon") {
      MollifierConfig m{to_double(key, v)};
      m.validate();
      cfg.mollifier = m;
    }
    else if (key == "stability.delta") {
      cfg.stability.deltas.clear();
      for (auto item : split_list(v)) cfg.stability.deltas.push_back(to_double(key, item));
    }
    else if (key == "stability.field") {
      try {
        cfg.stability.field = parse_field(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
      }
      if (cfg.stability.field == Field::Ux || cfg.stability.field == Field::ThetaX) {
        throw ConfigError(key, "perturbation must target tau, u, theta or b");
      }
    }
    else if (key == "stability.shape") {
      try {
        cfg.stability.shape = parse_shape(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
      }
    }
    else if (key == "stability.q") {
      cfg.stability.qs.clear();
      for (auto item : split_list(v)) cfg.stability.qs.push_back(to_double(key, item));
    }
    else if (key == "stability.r") cfg.stability_r = to_double(key, v);
    else if (key == "stability.eps") cfg.stability.eps = to_double(key, v);
    else if (key == "convergence.levels") {
      for (auto item : split_list(v)) cfg.convergence_levels.push_back(positive_count(key, item));
    }
    else throw ConfigError(key, "unknown key");
  }

  if (cfg.preset && cfg.file) throw ConfigError("init", "init.preset and init.file are mutually exclusive");
  if (!cfg.preset && !cfg.file) throw ConfigError("init", "one of init.preset or init.file is required");
  if (cfg.preset && !cfg.n) throw ConfigError("grid.n", "required with init.preset");

  for (double q : cfg.stability.qs) {
    try {
      const NormSpec spec = stability_norm_spec(q, cfg.stability.eps);
      if (cfg.stability_r && std::abs(*cfg.stability_r - spec.r) > 1e-12 * spec.r) {
        throw ConstraintError(fmt::format(
            "r = {} does not satisfy 1/(2q) + 1/r = (1+eps)/2 for q = {}, eps = {} (needs r = {})",
            *cfg.stability_r, q, cfg.stability.eps, spec.r));
      }
    } catch (const ConstraintError& e) {
      throw ConfigError("stability", e.what());
    }
  }
  if (cfg.stability.deltas.empty()) throw ConfigError("stability.delta", "needs at least one value");
  if (cfg.stability.qs.empty()) throw ConfigError("stability.q", "needs at least one value");
  if (!cfg.convergence_levels.empty()) check_ladder(cfg.convergence_levels);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read config '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig cfg = parse_config(ss.str());
  if (cfg.file) {
    std::filesystem::path f(*cfg.file);
    if (f.is_relative()) cfg.file = (std::filesystem::path(path).parent_path() / f).string();
  }
  return cfg;
}

std::string render_config(const RunConfig& cfg) {
  const SchemeConfig& s = cfg.scheme;
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  if (cfg.n) line("grid.n", std::to_string(*cfg.n));
  if (cfg.preset) line("init.preset", *cfg.preset);
  if (cfg.file) line("init.file", *cfg.file);
  line("time.t_end", g17(s.t_end));
  line("time.dt_init", g17(s.dt_init));
  line("time.cfl_safety", g17(s.cfl_safety));
  line("time.theta_step_mode", s.theta_step_mode == ThetaStepMode::Implicit ? "implicit" : "explicit");
  line("time.newton_tol", g17(s.newton_tol));
  line("time.newton_max_iter", std::to_string(s.newton_max_iter));
  line("time.max_dt_halvings", std::to_string(s.max_dt_halvings));
  line("params.R", g17(cfg.params.R));
  line("params.cv", g17(cfg.params.cv));
  line("params.mu", g17(cfg.params.mu));
  line("params.kappa", g17(cfg.params.kappa));
  line("output.snapshot_interval", g17(s.snapshot_interval));
  if (cfg.mollifier) line("mollifier.epsilon", g17(cfg.mollifier->epsilon));
  line("stability.delta", join(cfg.stability.deltas, g17));
  line("stability.field", std::string(field_name(cfg.stability.field)));
  line("stability.shape", std::string(shape_name(cfg.stability.shape)));
  line("stability.q", join(cfg.stability.qs, g17));
  line("stability.eps", g17(cfg.stability.eps));
  if (!cfg.convergence_levels.empty()) {
    line("convergence.levels",
         join(cfg.convergence_levels, [](std::size_t n) { return std::to_string(n); }));
  }
  return out;
}

}  // namespace mhd1d
