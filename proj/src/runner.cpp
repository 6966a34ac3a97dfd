#include "admb/runner.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <json.hpp>

#include "admb/csv.hpp"
#include "admb/diagnostics.hpp"
#include "admb/errors.hpp"
#include "admb/snapshot.hpp"
#include "admb/spectral_ops.hpp"

#ifndef ADMB_VERSION
#define ADMB_VERSION "0.0.0"
#endif

namespace admb {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Manifest {
  std::string command;
  std::string config_hash;
  std::vector<std::string> outputs;
  json extra = json::object();
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const fs::path& dir, const Manifest& m, const RunSummary& s) {
  json j;
  j["tool"] = "admb";
  j["version"] = version();
  j["command"] = m.command;
  j["config_sha256"] = m.config_hash;
  j["status"] = s.exit_code == kExitOk ? "ok" : "failed";
  j["error_category"] = s.category.empty() ? json(nullptr) : json(s.category);
  j["error_message"] = s.message.empty() ? json(nullptr) : json(s.message);
  j["partial"] = s.partial;
  j["outputs"] = m.outputs;
  for (const auto& [key, value] : m.extra.items()) j[key] = value;
  j["created_utc"] = utc_now();
  std::ofstream out(dir / "manifest.json", std::ios::trunc);
  if (!out) throw IoError("cannot write manifest in '" + dir.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("cannot write manifest in '" + dir.string() + "'");
}

void fail(RunSummary& s, int code, const char* category, const std::string& message) {
  s.exit_code = code;
  s.category = category;
  s.message = message;
}

void write_ledger(const fs::path& path, std::vector<EnergyRecord>& records) {
  if (records.size() >= 3) energy_balance_residual(records);
  CsvWriter csv(path.string(), {"time", "energy", "visc_dissipation", "dens_dissipation",
                                "buoyancy_flux", "balance_residual"});
  for (const EnergyRecord& r : records) {
    csv.row(std::vector<double>{r.time, r.energy, r.visc_dissipation, r.dens_dissipation,
                                r.buoyancy_flux, r.balance_residual});
  }
  csv.close();
}

void write_norms(const fs::path& path, const NormTable& table) {
  CsvWriter csv(path.string(), {"label", "variable", "norm", "value", "order"});
  for (const NormEntry& e : table.entries) {
    csv.row(std::vector<std::string>{e.label, e.variable, e.norm, format_double(e.value), e.order});
  }
  csv.close();
}

std::string step_name(std::int64_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%08lld.admb", static_cast<long long>(step));
  return buf;
}

GridPtr config_grid(const RunConfig& c) {
  return TorusGrid::create(c.grid.box_length, c.grid.modes_per_axis, c.grid.truncation_radius);
}

void require_match(const char* name, double config_value, double snapshot_value) {
  if (config_value != snapshot_value) {
    throw ConfigError(std::string("snapshot ") + name + " (" + format_double(snapshot_value) +
                      ") differs from the config (" + format_double(config_value) + ")");
  }
}

SolverState starting_state(const RunConfig& c, const ModelParams& params,
                           const std::optional<std::string>& snapshot_path) {
  if (snapshot_path) {
    Snapshot snap = read_snapshot(*snapshot_path);
    if (!snap.state.w.grid().same_as(params.spec.grid())) {
      throw ConfigError("snapshot grid differs from the configured grid");
    }
    require_match("nu", params.nu, snap.header.nu);
    require_match("epsilon", params.epsilon, snap.header.epsilon);
    require_match("alpha", params.spec.alpha(), snap.header.alpha);
    require_match("N", params.spec.order(), snap.header.order);
    // rebind to the run's grid object so every field shares one pointer
    SolverState s{VectorField(params.spec.grid_ptr()), ScalarField(params.spec.grid_ptr()),
                  snap.state.time};
    for (int i = 0; i < 3; ++i) {
      std::copy(snap.state.w[i].coeffs().begin(), snap.state.w[i].coeffs().end(),
                s.w[i].coeffs().begin());
    }
    std::copy(snap.state.rho.coeffs().begin(), snap.state.rho.coeffs().end(),
              s.rho.coeffs().begin());
    return s;
  }
  const InitialData data = make_initial(c.initial.preset, c.initial.params, params.spec.grid_ptr());
  return init_state(data.u0, data.theta0, params);
}

void single(const RunConfig& c, const RunOptions& opt, const fs::path& dir, Manifest& m,
            RunSummary& summary) {
  const GridPtr grid = config_grid(c);
  const ModelParams params(c.physics.nu, c.physics.single_epsilon(),
                           DeconvolutionSpec(grid, c.physics.alpha, c.physics.single_order()));
  const std::optional<std::string> snap_path =
      opt.resume_snapshot ? opt.resume_snapshot : c.initial.snapshot;
  const SolverState start = starting_state(c, params, snap_path);

  StepControl control = c.time;
  control.strict_invariants = control.strict_invariants || opt.strict_invariants;

  std::vector<EnergyRecord> records;
  NormTableAccumulator norms(params);
  const bool snapshots = c.output.write_snapshots;
  if (snapshots) fs::create_directories(dir / "snapshots");

  std::vector<Observer> observers;
  observers.emplace_back([&](const SolverState& s, std::int64_t) {
    records.push_back(energy_record(params, s));
    norms.add(s);
  });
  if (snapshots && c.output.snapshot_interval > 0) {
    observers.emplace_back([&](const SolverState& s, std::int64_t n) {
      if (n % c.output.snapshot_interval != 0) return;
      const std::string name = "snapshots/" + step_name(n);
      write_snapshot((dir / name).string(), params, s);
      m.outputs.push_back(name);
    });
  }

  std::optional<SolverState> final_state;
  try {
    final_state = integrate(params, start, control, observers).state;
  } catch (const IntegrationError& e) {
    fail(summary, kExitNumerical, "numerical", e.what());
    summary.partial = true;
    final_state = e.last_good();
    m.extra["failed_after_steps"] = e.steps();
  }
  if (records.empty()) {
    records.push_back(energy_record(params, *final_state));
    norms.add(*final_state);
  }

  if (c.output.write_csv) {
    write_ledger(dir / "ledger.csv", records);
    m.outputs.emplace_back("ledger.csv");
    write_norms(dir / "norms.csv", norms.table());
    m.outputs.emplace_back("norms.csv");
  }
  if (snapshots) {
    write_snapshot((dir / "final.admb").string(), params, *final_state);
    m.outputs.emplace_back("final.admb");
  }
  m.extra["final_time"] = final_state->time;
}

void family(const RunConfig& c, const RunOptions& opt, const fs::path& dir, Manifest& m,
            RunSummary& summary) {
  if (c.initial.snapshot || opt.resume_snapshot) {
    throw ConfigError("family runs start from a preset initial condition, not a snapshot");
  }
  const GridPtr grid = config_grid(c);
  FamilyPlan plan;
  plan.alpha = c.physics.alpha;
  plan.nu = c.physics.nu;
  plan.orders = c.physics.orders;
  plan.epsilon_rule = c.physics.epsilon_rule.value_or(EpsilonRule{});
  const InitialData data = make_initial(c.initial.preset, c.initial.params, grid);
  plan.u0 = data.u0;
  plan.theta0 = data.theta0;
  plan.control = c.time;
  plan.control.strict_invariants = plan.control.strict_invariants || opt.strict_invariants;
  plan.workers = c.family.workers;

  ConvergenceReport report = run_family(plan);

  for (MemberRun& member : report.members) {
    const std::string sub = "N_" + std::to_string(member.order);
    fs::create_directories(dir / sub);
    const ModelParams params(plan.nu, member.epsilon,
                             DeconvolutionSpec(grid, plan.alpha, member.order));
    if (c.output.write_csv) {
      write_ledger(dir / sub / "ledger.csv", member.ledger);
      write_norms(dir / sub / "norms.csv", norm_table(params, member.samples));
      m.outputs.push_back(sub + "/ledger.csv");
      m.outputs.push_back(sub + "/norms.csv");
    }
    if (c.output.write_snapshots && !member.samples.empty()) {
      write_snapshot((dir / sub / "final.admb").string(), params, member.samples.back());
      m.outputs.push_back(sub + "/final.admb");
    }
  }

  if (!report.complete) {
    fail(summary, kExitNumerical, "numerical", report.failure);
    summary.partial = true;
    return;
  }

  CsvWriter csv((dir / "convergence.csv").string(),
                {"N", "epsilon", "operator_error", "w_diff_L2_H1", "w_diff_Linf_H1",
                 "w_diff_L4_H1", "rho_diff_L2_L2", "residual_w_L2", "residual_rho_L2",
                 "min_limit_slack", "initial_energy"});
  for (const ConvergenceRow& r : report.rows) {
    csv.row(std::vector<std::string>{
        std::to_string(r.order), format_double(r.epsilon), format_double(r.operator_error),
        format_double(r.w_diff_l2_h1), format_double(r.w_diff_linf_h1),
        format_double(r.w_diff_l4_h1), format_double(r.rho_diff_l2_l2),
        format_double(r.residual_w), format_double(r.residual_rho),
        format_double(r.min_limit_slack), format_double(r.initial_energy)});
  }
  csv.close();
  m.outputs.emplace_back("convergence.csv");

  const CauchyVerdict verdict = cauchy_check(report, c.family.cauchy_tolerance);
  m.extra["cauchy_converged"] = verdict.converged;
  m.extra["cauchy_summary"] = verdict.summary;
  summary.verdict = verdict;
}

RunSummary execute(const RunConfig& c, const std::string& text, const RunOptions& opt,
                   const char* command, bool as_family) {
  RunSummary summary;
  Manifest m;
  m.command = command;
  m.config_hash = sha256_hex(text);
  try {
    summary.directory = resolve_output_dir(c.output, opt);
    fs::create_directories(summary.directory);
  } catch (const fs::filesystem_error& e) {
    fail(summary, kExitIo, "io", e.what());
    return summary;
  }
  const fs::path& dir = summary.directory;
  try {
    if (as_family) {
      family(c, opt, dir, m, summary);
    } else {
      single(c, opt, dir, m, summary);
    }
  } catch (const ConfigError& e) {
    fail(summary, kExitConfig, "config", e.what());
  } catch (const NumericalError& e) {
    fail(summary, kExitNumerical, "numerical", e.what());
  } catch (const IoError& e) {
    fail(summary, kExitIo, "io", e.what());
    summary.partial = true;
  } catch (const fs::filesystem_error& e) {
    fail(summary, kExitIo, "io", e.what());
    summary.partial = true;
  }
  if (summary.exit_code != kExitOk && !m.outputs.empty()) summary.partial = true;
  try {
    write_manifest(dir, m, summary);
  } catch (const IoError& e) {
    if (summary.exit_code == kExitOk) fail(summary, kExitIo, "io", e.what());
  }
  return summary;
}

}  // namespace

const char* version() { return ADMB_VERSION; }

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  static constexpr char kDigits[] = "0123456789abcdef";
  for (unsigned int i = 0; i < len; ++i) {
    hex += kDigits[md[i] >> 4];
    hex += kDigits[md[i] & 0xF];
  }
  return hex;
}

fs::path resolve_output_dir(const OutputConfig& output, const RunOptions& options) {
  const fs::path dir(output.directory);
  if (dir.is_absolute()) return dir;
  if (options.output_root) return fs::path(*options.output_root) / dir;
  if (const char* root = std::getenv("ADMB_OUTPUT_ROOT"); root != nullptr && *root != '\0') {
    return fs::path(root) / dir;
  }
  return fs::current_path() / dir;
}

RunSummary run(const RunConfig& config, const std::string& config_text,
               const RunOptions& options) {
  const bool fam = config.physics.is_family();
  return execute(config, config_text, options, options.resume_snapshot ? "resume" : "run", fam);
}

RunSummary run_family_config(const RunConfig& config, const std::string& config_text,
                             const RunOptions& options) {
  if (!config.physics.is_family()) throw ConfigError("family runs need physics.N_list");
  return execute(config, config_text, options, "family", true);
}

}  // namespace admb
