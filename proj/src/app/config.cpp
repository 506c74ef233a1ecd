#include "tdgl/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "tdgl/errors.hpp"

namespace tdgl {

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Manufactured: return "manufactured";
    case Scenario::LShape: return "lshape";
    case Scenario::SquareWithHoles: return "square_with_holes";
    case Scenario::Custom: return "custom";
  }
  return "custom";
}

namespace {

Scenario parse_scenario(const std::string& v) {
  for (Scenario s : {Scenario::Manufactured, Scenario::LShape, Scenario::SquareWithHoles, Scenario::Custom})
    if (v == scenario_name(s)) return s;
  throw ConfigError("scenario", "unknown scenario '" + v + "'");
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || !std::isfinite(out))
    throw ConfigError(key, "expected a number, got '" + v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(key, "expected an integer, got '" + v + "'");
  return out;
}

bool is_number(const std::string& v) {
  double out;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  return ec == std::errc() && ptr == v.data() + v.size() && !v.empty();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Field {
  std::function<void(RunConfig&, const std::string& key, const std::string& value)> set;
  std::function<std::string(const RunConfig&)> get;
};

// Keys in emission order; section is the part before the dot.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = [] {
    std::vector<std::pair<std::string, Field>> t;
    auto real = [&t](const char* key, double RunConfig::*member) {
      t.push_back({key, {[member](RunConfig& c, const std::string& k, const std::string& v) { c.*member = to_double(k, v); },
                         [member](const RunConfig& c) { return fmt(c.*member); }}});
    };
    auto integer = [&t](const char* key, int RunConfig::*member) {
      t.push_back({key, {[member](RunConfig& c, const std::string& k, const std::string& v) { c.*member = to_int(k, v); },
                         [member](const RunConfig& c) { return std::to_string(c.*member); }}});
    };
    auto text = [&t](const char* key, std::string RunConfig::*member) {
      t.push_back({key, {[member](RunConfig& c, const std::string&, const std::string& v) { c.*member = v; },
                         [member](const RunConfig& c) { return c.*member; }}});
    };
    text("mesh.generator", &RunConfig::mesh_generator);
    integer("mesh.M", &RunConfig::mesh_M);
    text("mesh.file", &RunConfig::mesh_file);
    real("physics.kappa", &RunConfig::kappa);
    real("physics.sigma", &RunConfig::sigma);
    text("physics.H", &RunConfig::applied_field);
    text("physics.mu", &RunConfig::mu);
    real("physics.mu_safety", &RunConfig::mu_safety);
    real("physics.psi0_re", &RunConfig::psi0_re);
    real("physics.psi0_im", &RunConfig::psi0_im);
    real("time.T", &RunConfig::T);
    text("time.tau", &RunConfig::tau);
    real("time.alpha", &RunConfig::alpha);
    real("time.tau_min", &RunConfig::tau_min);
    real("time.tau_max", &RunConfig::tau_max);
    real("solver.krylov_tol", &RunConfig::krylov_tol);
    integer("solver.krylov_max_dim", &RunConfig::krylov_max_dim);
    real("solver.cg_tol", &RunConfig::cg_tol);
    text("solver.energy_check", &RunConfig::energy_check);
    text("output.directory", &RunConfig::output_directory);
    t.push_back({"output.snapshots",
                 {[](RunConfig& c, const std::string& k, const std::string& v) {
                    c.snapshots.clear();
                    std::stringstream ss(v);
                    std::string item;
                    while (std::getline(ss, item, ','))
                      if (!trim(item).empty()) c.snapshots.push_back(to_double(k, trim(item)));
                  },
                  [](const RunConfig& c) {
                    std::string s;
                    for (std::size_t i = 0; i < c.snapshots.size(); ++i) s += (i ? ", " : "") + fmt(c.snapshots[i]);
                    return s;
                  }}});
    integer("output.series_every", &RunConfig::series_every);
    return t;
  }();
  return table;
}

// Bare key for messages: "kappa" rather than "physics.kappa".
std::string short_key(const std::string& key) {
  const auto dot = key.find('.');
  return dot == std::string::npos ? key : key.substr(dot + 1);
}

void positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError(key, "must be positive (got " + fmt(v) + ")");
}

}  // namespace

RunConfig default_config(Scenario s) {
  RunConfig c;
  c.scenario = s;
  switch (s) {
    case Scenario::Manufactured:
      c.mesh_generator = "unit_square";
      c.mesh_M = 8;
      c.kappa = 1.0;
      c.sigma = 1.0;
      c.applied_field = "manufactured";
      c.T = 1.0;
      c.tau = "h";
      c.krylov_max_dim = 200;  // tau*|S| grows like 1/h at tau = h
      break;
    case Scenario::LShape:
      break;  // struct defaults are the L-shape parameters
    case Scenario::SquareWithHoles:
      c.mesh_generator = "holes";
      c.mesh_M = 8;
      c.kappa = 4.0;
      c.sigma = 1.0;
      c.applied_field = "1.1";
      c.psi0_re = 1.0;
      c.psi0_im = 0.0;
      c.T = 100.0;
      break;
    case Scenario::Custom:
      c.mesh_generator = "file";
      c.applied_field = "0";
      c.psi0_re = 1.0;
      c.psi0_im = 0.0;
      break;
  }
  return c;
}

void validate(const RunConfig& c) {
  static const std::set<std::string> generators{"unit_square", "lshape", "holes", "file"};
  if (!generators.count(c.mesh_generator)) throw ConfigError("generator", "unknown mesh generator '" + c.mesh_generator + "'");
  if (c.mesh_generator == "file" && c.mesh_file.empty()) throw ConfigError("file", "mesh file path is required");
  if (c.mesh_M < 1) throw ConfigError("M", "must be >= 1");
  positive("kappa", c.kappa);
  positive("sigma", c.sigma);
  if (c.applied_field != "manufactured" && !is_number(c.applied_field))
    throw ConfigError("H", "expected a number or 'manufactured', got '" + c.applied_field + "'");
  if (c.applied_field == "manufactured" && c.mesh_generator != "unit_square")
    throw ConfigError("H", "the manufactured field is defined on the unit square only");
  if (c.mu != "auto") {
    if (!is_number(c.mu)) throw ConfigError("mu", "expected a number or 'auto', got '" + c.mu + "'");
    if (to_double("mu", c.mu) < 0.0) throw ConfigError("mu", "must be non-negative");
  }
  positive("mu_safety", c.mu_safety);
  if (!(c.T >= 0.0)) throw ConfigError("T", "must be non-negative");
  if (c.tau != "adaptive" && c.tau != "h") {
    if (!is_number(c.tau)) throw ConfigError("tau", "expected a number, 'adaptive' or 'h', got '" + c.tau + "'");
    positive("tau", to_double("tau", c.tau));
  }
  positive("alpha", c.alpha);
  positive("tau_min", c.tau_min);
  positive("tau_max", c.tau_max);
  if (c.tau_min > c.tau_max) throw ConfigError("tau_min", "must not exceed tau_max (" + fmt(c.tau_max) + ")");
  positive("krylov_tol", c.krylov_tol);
  if (c.krylov_max_dim < 1) throw ConfigError("krylov_max_dim", "must be >= 1");
  positive("cg_tol", c.cg_tol);
  if (c.energy_check != "off" && c.energy_check != "warn" && c.energy_check != "abort")
    throw ConfigError("energy_check", "expected off, warn or abort");
  for (double s : c.snapshots)
    if (s < 0.0 || s > c.T) throw ConfigError("snapshots", "snapshot time " + fmt(s) + " outside [0, T]");
  if (c.series_every < 1) throw ConfigError("series_every", "must be >= 1");
}

RunConfig parse_config(std::string_view text) {
  struct Entry {
    std::string key, value;
  };
  std::vector<Entry> entries;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno), "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string full = section.empty() ? key : section + "." + key;
    if (!seen.insert(full).second) throw ConfigError(key, "duplicate key");
    entries.push_back({full, trim(line.substr(eq + 1))});
  }

  Scenario scenario = Scenario::LShape;
  bool have_scenario = false;
  for (const auto& e : entries)
    if (e.key == "scenario") {
      scenario = parse_scenario(e.value);
      have_scenario = true;
    }
  if (!have_scenario) throw ConfigError("scenario", "missing required key");

  RunConfig cfg = default_config(scenario);
  for (const auto& e : entries) {
    if (e.key == "scenario") continue;
    const auto& table = fields();
    auto it = std::find_if(table.begin(), table.end(), [&](const auto& f) { return f.first == e.key; });
    if (it == table.end()) throw ConfigError(e.key, "unknown key");
    it->second.set(cfg, short_key(e.key), e.value);
  }
  validate(cfg);
  return cfg;
}

std::string emit_config(const RunConfig& cfg) {
  std::string out = "scenario = " + std::string(scenario_name(cfg.scenario)) + "\n";
  std::string section;
  for (const auto& [key, field] : fields()) {
    const std::string sec = key.substr(0, key.find('.'));
    if (sec != section) {
      out += "\n[" + sec + "]\n";
      section = sec;
    }
    out += short_key(key) + " = " + field.get(cfg) + "\n";
  }
  return out;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

}  // namespace tdgl
