#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "admb/config.hpp"

namespace admb {

/// Process exit statuses.
enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3, kExitIo = 4 };

struct RunOptions {
  bool strict_invariants = false;
  /// Root for relative output directories; falls back to ADMB_OUTPUT_ROOT,
  /// then to the working directory.
  std::optional<std::string> output_root;
  /// Start from this snapshot instead of the configured initial condition.
  std::optional<std::string> resume_snapshot;
};

struct RunSummary {
  int exit_code = kExitOk;
  /// "", "config", "numerical" or "io".
  std::string category;
  std::string message;
  std::filesystem::path directory;
  bool partial = false;
  /// Set for family runs that completed.
  std::optional<CauchyVerdict> verdict;
};

const char* version();
std::string sha256_hex(const std::string& data);

/// Output directory for a config: absolute paths as given, relative ones
/// under the output root.
std::filesystem::path resolve_output_dir(const OutputConfig& output, const RunOptions& options);

/// Single run (or a family when the config has N_list). Writes
///   ledger.csv, norms.csv, snapshots/step_<n>.admb, final.admb, manifest.json
/// and for families convergence.csv plus one N_<order>/ directory per member.
/// Library errors are caught and reported through the summary and the
/// manifest; outputs produced before a failure are kept.
RunSummary run(const RunConfig& config, const std::string& config_text,
               const RunOptions& options = {});

/// Like run() but requires N_list.
RunSummary run_family_config(const RunConfig& config, const std::string& config_text,
                             const RunOptions& options = {});

}  // namespace admb
