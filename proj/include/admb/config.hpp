#pragma once

#include <optional>
#include <string>
#include <vector>

#include "admb/convergence.hpp"
#include "admb/initial.hpp"
#include "admb/integrator.hpp"

namespace admb {

struct GridConfig {
  double box_length = 6.283185307179586;
  int modes_per_axis = 16;
  std::optional<int> truncation_radius;
};

struct PhysicsConfig {
  double nu = 0.1;
  /// Fixed epsilon for single runs.
  std::optional<double> epsilon;
  /// eps(N) = epsilon0 / (N + 1) for families.
  std::optional<EpsilonRule> epsilon_rule;
  double alpha = 1.0;
  std::optional<int> order;
  std::vector<int> orders;

  [[nodiscard]] bool is_family() const { return !orders.empty(); }
  /// epsilon for a single run (the fixed value, or the rule applied to N).
  [[nodiscard]] double single_epsilon() const;
  [[nodiscard]] int single_order() const { return order.value_or(5); }
};

struct InitialConfig {
  std::string preset = "taylor-green";
  InitialParams params;
  /// Start from a snapshot instead of a preset.
  std::optional<std::string> snapshot;
};

struct OutputConfig {
  std::string directory = "admb-output";
  /// Steps between snapshots (a multiple of observer_cadence); 0 writes only
  /// the final state.
  int snapshot_interval = 0;
  bool write_csv = true;
  bool write_snapshots = true;
};

struct FamilyConfig {
  double cauchy_tolerance = 1e-2;
  unsigned workers = 0;
};

struct RunConfig {
  GridConfig grid;
  PhysicsConfig physics;
  StepControl time;
  InitialConfig initial;
  OutputConfig output;
  FamilyConfig family;
};

/// Parses and validates a YAML configuration document. Unknown keys, type
/// errors and out-of-range values throw ConfigError naming the key, its line
/// and the legal range.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Throws ConfigError if any parameter is out of range or two settings conflict.
void validate(const RunConfig& config);

}  // namespace admb
