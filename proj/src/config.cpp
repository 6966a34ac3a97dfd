#include "admb/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "admb/errors.hpp"

namespace admb {

namespace {

std::string where(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) return "";
  return " (line " + std::to_string(mark.line + 1) + ")";
}

void check_keys(const YAML::Node& map, const std::string& section,
                const std::set<std::string>& allowed) {
  if (!map.IsMap()) throw ConfigError("'" + section + "' must be a mapping" + where(map));
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) {
      const std::string path = section.empty() ? key : section + "." + key;
      throw ConfigError("unknown key '" + path + "'" + where(kv.first));
    }
  }
}

template <typename T>
T read(const YAML::Node& node, const std::string& name) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("'" + name + "' has the wrong type" + where(node));
  }
}

template <typename T>
void read_into(const YAML::Node& map, const std::string& section, const char* key, T& out) {
  if (const YAML::Node node = map[key]) out = read<T>(node, section + "." + key);
}

template <typename T>
void read_into(const YAML::Node& map, const std::string& section, const char* key,
               std::optional<T>& out) {
  if (const YAML::Node node = map[key]) out = read<T>(node, section + "." + key);
}

void parse_grid(const YAML::Node& node, GridConfig& grid) {
  check_keys(node, "grid", {"box_length", "modes_per_axis", "truncation_radius"});
  read_into(node, "grid", "box_length", grid.box_length);
  read_into(node, "grid", "modes_per_axis", grid.modes_per_axis);
  read_into(node, "grid", "truncation_radius", grid.truncation_radius);
}

void parse_physics(const YAML::Node& node, PhysicsConfig& phys) {
  check_keys(node, "physics", {"nu", "epsilon", "epsilon_rule", "alpha", "N", "N_list"});
  read_into(node, "physics", "nu", phys.nu);
  read_into(node, "physics", "epsilon", phys.epsilon);
  read_into(node, "physics", "alpha", phys.alpha);
  read_into(node, "physics", "N", phys.order);
  read_into(node, "physics", "N_list", phys.orders);
  if (const YAML::Node rule = node["epsilon_rule"]) {
    check_keys(rule, "physics.epsilon_rule", {"epsilon0"});
    EpsilonRule r;
    read_into(rule, "physics.epsilon_rule", "epsilon0", r.epsilon0);
    phys.epsilon_rule = r;
  }
  if (phys.epsilon && phys.epsilon_rule) {
    throw ConfigError("'physics.epsilon' and 'physics.epsilon_rule' are mutually exclusive" +
                      where(node));
  }
  if (phys.order && !phys.orders.empty()) {
    throw ConfigError("'physics.N' and 'physics.N_list' are mutually exclusive" + where(node));
  }
  if (phys.epsilon_rule && phys.orders.empty()) {
    throw ConfigError("'physics.epsilon_rule' requires 'physics.N_list'" + where(node));
  }
  if (phys.epsilon && !phys.orders.empty()) {
    throw ConfigError("'physics.N_list' needs 'physics.epsilon_rule', not a fixed epsilon" +
                      where(node));
  }
}

void parse_time(const YAML::Node& node, StepControl& time) {
  check_keys(node, "time", {"dt", "t_end", "cfl_safety", "observer_cadence"});
  read_into(node, "time", "dt", time.dt);
  read_into(node, "time", "t_end", time.t_end);
  read_into(node, "time", "cfl_safety", time.cfl_safety);
  read_into(node, "time", "observer_cadence", time.observer_cadence);
}

void parse_initial(const YAML::Node& node, InitialConfig& init) {
  check_keys(node, "initial_condition",
             {"preset", "snapshot", "amplitude", "theta_amplitude", "k_min", "k_max", "seed"});
  const bool has_preset = static_cast<bool>(node["preset"]);
  read_into(node, "initial_condition", "preset", init.preset);
  read_into(node, "initial_condition", "snapshot", init.snapshot);
  if (has_preset && init.snapshot) {
    throw ConfigError("'initial_condition' takes either 'preset' or 'snapshot'" + where(node));
  }
  InitialParams& p = init.params;
  read_into(node, "initial_condition", "amplitude", p.amplitude);
  read_into(node, "initial_condition", "theta_amplitude", p.theta_amplitude);
  read_into(node, "initial_condition", "k_min", p.k_min);
  read_into(node, "initial_condition", "k_max", p.k_max);
  read_into(node, "initial_condition", "seed", p.seed);
}

void parse_output(const YAML::Node& node, OutputConfig& out) {
  check_keys(node, "output", {"directory", "snapshot_interval", "formats"});
  read_into(node, "output", "directory", out.directory);
  read_into(node, "output", "snapshot_interval", out.snapshot_interval);
  if (const YAML::Node formats = node["formats"]) {
    const auto list = read<std::vector<std::string>>(formats, "output.formats");
    out.write_csv = false;
    out.write_snapshots = false;
    for (const auto& f : list) {
      if (f == "csv") {
        out.write_csv = true;
      } else if (f == "snapshot") {
        out.write_snapshots = true;
      } else {
        throw ConfigError("unknown output format '" + f + "' (expected csv or snapshot)" +
                          where(formats));
      }
    }
  }
}

void parse_family(const YAML::Node& node, FamilyConfig& fam) {
  check_keys(node, "family", {"cauchy_tolerance", "workers"});
  read_into(node, "family", "cauchy_tolerance", fam.cauchy_tolerance);
  read_into(node, "family", "workers", fam.workers);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

double PhysicsConfig::single_epsilon() const {
  if (epsilon) return *epsilon;
  if (epsilon_rule) return (*epsilon_rule)(single_order());
  return 0.1;
}

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("config parse error at line " + std::to_string(e.mark.line + 1) +
                      ", column " + std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  RunConfig cfg;
  if (root.IsNull()) {
    validate(cfg);
    return cfg;
  }
  check_keys(root, "", {"grid", "physics", "time", "initial_condition", "output", "family"});
  if (root["grid"]) parse_grid(root["grid"], cfg.grid);
  if (root["physics"]) parse_physics(root["physics"], cfg.physics);
  if (root["time"]) parse_time(root["time"], cfg.time);
  if (root["initial_condition"]) parse_initial(root["initial_condition"], cfg.initial);
  if (root["output"]) parse_output(root["output"], cfg.output);
  if (root["family"]) parse_family(root["family"], cfg.family);
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const RunConfig& c) {
  require(c.grid.box_length > 0.0 && std::isfinite(c.grid.box_length),
          "grid.box_length must be > 0");
  require(c.grid.modes_per_axis >= 4 && c.grid.modes_per_axis % 2 == 0,
          "grid.modes_per_axis must be even and >= 4");
  const PhysicsConfig& p = c.physics;
  require(p.nu > 0.0, "physics.nu must satisfy nu > 0");
  require(p.alpha > 0.0, "physics.alpha must satisfy alpha > 0");
  if (p.epsilon) {
    require(*p.epsilon > 0.0 && *p.epsilon < 1.0,
            "physics.epsilon must satisfy 0 < epsilon < 1 (got " + std::to_string(*p.epsilon) +
                ")");
  }
  if (p.epsilon_rule) {
    const double e0 = p.epsilon_rule->epsilon0;
    require(e0 > 0.0 && e0 < 1.0,
            "physics.epsilon_rule.epsilon0 must satisfy 0 < epsilon0 < 1 so that 0 < epsilon < 1");
  }
  if (p.order) require(*p.order >= 0, "physics.N must satisfy N >= 0");
  for (std::size_t i = 0; i < p.orders.size(); ++i) {
    require(p.orders[i] >= 0, "physics.N_list entries must satisfy N >= 0");
    if (i > 0) require(p.orders[i] > p.orders[i - 1], "physics.N_list must be strictly increasing");
  }
  if (p.is_family()) require(p.orders.size() >= 3, "physics.N_list needs at least 3 entries");
  try {
    c.time.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("time: ") + e.what());
  }
  const auto& init = c.initial;
  if (!init.snapshot) {
    require(init.preset == "taylor-green" || init.preset == "random-band" || init.preset == "zero",
            "initial_condition.preset must be taylor-green, random-band or zero (got '" +
                init.preset + "')");
  }
  require(init.params.k_min >= 0.0 && init.params.k_max >= init.params.k_min,
          "initial_condition needs 0 <= k_min <= k_max");
  require(c.output.snapshot_interval >= 0, "output.snapshot_interval must be >= 0");
  if (c.output.snapshot_interval > 0) {
    require(c.output.snapshot_interval % c.time.observer_cadence == 0,
            "output.snapshot_interval must be a multiple of time.observer_cadence");
  }
  require(c.family.cauchy_tolerance > 0.0, "family.cauchy_tolerance must be > 0");
}

}  // namespace admb
