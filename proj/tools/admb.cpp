// admb: command-line driver for the ADM Boussinesq solver.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "admb/errors.hpp"
#include "admb/filter.hpp"
#include "admb/runner.hpp"

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw admb::IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int report(const admb::RunSummary& s) {
  if (s.exit_code == admb::kExitOk) {
    std::cout << "ok: outputs in " << s.directory.string() << '\n';
    if (s.verdict) {
      std::cout << "cauchy check: " << (s.verdict->converged ? "converged" : "not converged")
                << " (" << s.verdict->summary << ")\n";
    }
  } else {
    std::cerr << s.category << " error: " << s.message << '\n';
    if (!s.directory.empty()) {
      std::cerr << (s.partial ? "partial outputs" : "manifest") << " in " << s.directory.string()
                << '\n';
    }
  }
  return s.exit_code;
}

/// Table of min/max D_N over each |k|^2 shell against 1 <= D_N <= min(N+1, A).
int check_symbols(double alpha, int order, int modes) {
  const admb::GridPtr grid = admb::TorusGrid::create(2.0 * 3.141592653589793, modes);
  const admb::DeconvolutionSpec spec(grid, alpha, order);
  struct Shell {
    double lo = 1e300;
    double hi = -1e300;
    double bound = 0.0;
  };
  std::map<long, Shell> shells;
  for (std::size_t slot : grid->retained_slots()) {
    const admb::WaveIndex k = grid->index(slot);
    Shell& s = shells[k.norm_sq()];
    const double d = spec.symbols().deconv[slot];
    s.lo = std::min(s.lo, d);
    s.hi = std::max(s.hi, d);
    s.bound = std::min(static_cast<double>(order) + 1.0, spec.symbols().helmholtz[slot]);
  }
  constexpr double kTol = 1e-12;
  bool all_ok = true;
  std::printf("%8s %22s %22s %22s %s\n", "|k|^2", "min D_N", "max D_N", "min(N+1,A)", "ok");
  for (const auto& [ksq, s] : shells) {
    const bool ok = s.lo >= 1.0 - kTol && s.hi <= s.bound + kTol;
    all_ok = all_ok && ok;
    std::printf("%8ld %22.15e %22.15e %22.15e %s\n", ksq, s.lo, s.hi, s.bound, ok ? "yes" : "NO");
  }
  std::printf("alpha=%g N=%d modes=%d: %s\n", alpha, order, modes,
              all_ok ? "all symbols within bounds" : "BOUND VIOLATED");
  return all_ok ? admb::kExitOk : admb::kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate-deconvolution Boussinesq solver and verification lab"};
  app.set_version_flag("--version", admb::version());
  app.require_subcommand(1);
  bool strict = false;
  app.add_flag("--strict-invariants", strict, "check state invariants after every step");

  std::string config_path;
  std::string snapshot_path;
  double alpha = 1.0;
  int order = 5;
  int modes = 16;

  auto* run = app.add_subcommand("run", "run one configuration");
  run->add_option("config", config_path, "YAML config")->required();
  auto* family = app.add_subcommand("family", "run a convergence family (needs N_list)");
  family->add_option("config", config_path, "YAML config")->required();
  auto* symbols = app.add_subcommand("check-symbols", "verify 1 <= D_N <= min(N+1, A)");
  symbols->add_option("alpha", alpha)->required()->check(CLI::NonNegativeNumber);
  symbols->add_option("N", order)->required()->check(CLI::NonNegativeNumber);
  symbols->add_option("modes", modes)->required()->check(CLI::PositiveNumber);
  auto* resume = app.add_subcommand("resume", "continue a run from a snapshot");
  resume->add_option("snapshot", snapshot_path)->required();
  resume->add_option("config", config_path, "YAML config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : admb::kExitConfig;
  }

  try {
    if (symbols->parsed()) return check_symbols(alpha, order, modes);
    const std::string text = read_text(config_path);
    const admb::RunConfig config = admb::parse_config(text);
    admb::RunOptions options;
    options.strict_invariants = strict;
    if (resume->parsed()) options.resume_snapshot = snapshot_path;
    if (family->parsed()) return report(admb::run_family_config(config, text, options));
    return report(admb::run(config, text, options));
  } catch (const admb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return admb::kExitConfig;
  } catch (const admb::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return admb::kExitNumerical;
  } catch (const admb::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return admb::kExitIo;
  }
}
