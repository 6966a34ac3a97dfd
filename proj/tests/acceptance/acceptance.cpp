// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "../support/oracles.hpp"
#include "admb/convergence.hpp"
#include "admb/csv.hpp"
#include "admb/diagnostics.hpp"
#include "admb/initial.hpp"
#include "admb/runner.hpp"
#include "admb/snapshot.hpp"
#include "admb/spectral_ops.hpp"

namespace {

using namespace admb;
namespace fs = std::filesystem;

constexpr double kTwoPi = 6.283185307179586;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

int g_failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0 && secs > budget_s) {
    out.pass = false;
    out.detail += fmt("; runtime %.1fs over budget %.0fs", secs, budget_s);
  }
  if (!out.pass) ++g_failures;
  std::printf("%s criterion %d: %s [%s] (%.2fs)\n", out.pass ? "PASS" : "FAIL", id, title,
              out.detail.c_str(), secs);
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------

Outcome symbol_bounds() {
  const GridPtr g = build_grid(kTwoPi, 32);
  double worst = -1e300;  // most positive violation
  for (double alpha : {0.1, 1.0, 2.0}) {
    for (int order : {0, 1, 5, 20}) {
      const DeconvolutionSpec spec(g, alpha, order);
      for (std::size_t s : g->retained_slots()) {
        const double d = spec.symbols().deconv[s];
        const double upper = std::min(order + 1.0, 1.0 + alpha * alpha * g->k_sq(s));
        worst = std::max({worst, (1.0 - 1e-12) - d, d - (upper + 1e-12)});
      }
    }
  }
  return {worst <= 0.0, fmt("largest excursion past bounds %.3e", worst)};
}

Outcome van_cittert() {
  const GridPtr g = build_grid(kTwoPi, 16);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const ScalarField f = random_band_scalar(g, seed, 0.0, 7.0);
    for (double alpha : {0.5, 1.0, 2.0}) {
      for (int order = 0; order <= 20; ++order) {
        const ScalarField ref = oracle::van_cittert(f, alpha, order);
        const DeconvolutionSpec spec(g, alpha, order);
        worst = std::max(worst, oracle::max_abs_diff(deconvolve(spec, f), ref) / oracle::max_abs(ref));
      }
    }
  }
  return {worst <= 1e-12, fmt("max relative deviation %.3e", worst)};
}

Outcome operator_limit() {
  const GridPtr g = build_grid(kTwoPi, 16);
  ScalarField probe(g);
  probe.set({1, 0, 0}, Complex(0.5, 0.2));
  std::vector<int> orders;
  for (int n = 0; n <= 30; ++n) orders.push_back(n);
  const auto err = operator_convergence(g, 1.0, orders, probe, 1.0);
  double worst = 0.0;
  for (std::size_t i = 1; i < err.size(); ++i) worst = std::max(worst, std::abs(err[i] / err[i - 1] - 0.5));
  return {worst <= 1e-10, fmt("max |ratio - 1/2| = %.3e", worst)};
}

Outcome cancellations() {
  const GridPtr g = build_grid(kTwoPi, 16);
  const ModelParams p(0.1, 0.1, DeconvolutionSpec(g, 1.0, 5));
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const VectorField w = random_band_vector(g, seed, 0.0, 7.0);
    const ScalarField rho = random_band_scalar(g, seed + 1000, 0.0, 7.0);
    const VectorField nl = momentum_nonlinear(p, w);
    const VectorField tw = apply_A(p.spec, deconvolve(p.spec, w));
    worst = std::max(worst, std::abs(inner(nl, tw)) / (sobolev_norm(nl, 0) * sobolev_norm(tw, 0)));
    const ScalarField nr = density_nonlinear(p, rho, w);
    const ScalarField tr = apply_A(p.spec, deconvolve(p.spec, rho));
    worst = std::max(worst, std::abs(inner(nr, tr)) / (sobolev_norm(nr, 0) * sobolev_norm(tr, 0)));
  }
  return {worst <= 1e-10, fmt("max relative trilinear value %.3e", worst)};
}

/// Taylor-Green run shared by criteria 5-7.
struct LedgerRun {
  double dt = 0.0;
  std::vector<EnergyRecord> records;
  double max_residual = 0.0;
};

struct TaylorGreen {
  GridPtr grid = build_grid(kTwoPi, 16);
  ModelParams params{0.1, 0.1, DeconvolutionSpec(grid, 1.0, 5)};
  InitialData data = make_initial("taylor-green", {}, grid);
  std::vector<LedgerRun> runs;

  void run_all() {
    for (double dt : {0.004, 0.002, 0.001}) {
      LedgerRun r;
      r.dt = dt;
      StepControl c;
      c.dt = dt;
      c.t_end = 1.0;
      c.observer_cadence = 1;
      const Observer obs = [&](const SolverState& s, std::int64_t) {
        r.records.push_back(energy_record(params, s));
      };
      integrate(params, init_state(data.u0, data.theta0, params), c, std::span<const Observer>(&obs, 1));
      for (double v : energy_balance_residual(r.records)) r.max_residual = std::max(r.max_residual, std::abs(v));
      runs.push_back(std::move(r));
    }
  }
};

TaylorGreen g_tg;

Outcome energy_equality() {
  g_tg.run_all();
  const double e0 = g_tg.runs.front().records.front().energy;
  const double o1 = std::log2(g_tg.runs[0].max_residual / g_tg.runs[1].max_residual);
  const double o2 = std::log2(g_tg.runs[1].max_residual / g_tg.runs[2].max_residual);
  const double finest = g_tg.runs[2].max_residual;
  // observed orders of an O(dt^2) estimate approach 2 from either side; a
  // shortfall of 0.05 is the resolution of a three-level measurement
  const bool ok = o1 >= 2.0 - 0.05 && o2 >= 2.0 - 0.05 && finest <= 1e-6 * e0;
  std::string d = fmt("orders %.3f, %.3f; ", o1, o2);
  d += fmt("finest max residual %.3e vs 1e-6 E(0) = %.3e", finest, 1e-6 * e0);
  return {ok, d};
}

Outcome a_priori() {
  const auto& recs = g_tg.runs.back().records;
  const double u2 = std::pow(sobolev_norm(g_tg.data.u0, 0.0), 2);
  const double t2 = std::pow(sobolev_norm(g_tg.data.theta0, 0.0), 2);
  double worst = 0.0;
  for (const BoundSample& b : a_priori_bound(recs, g_tg.params.nu, u2, t2)) {
    worst = std::max(worst, b.monitored / b.bound);
  }
  return {worst <= 0.99, fmt("max monitored/bound %.4f (need <= 0.99)", worst)};
}

Outcome density_decay() {
  double worst = 0.0;
  double scale = 0.0;
  for (const LedgerRun& r : g_tg.runs) {
    scale = r.records.front().density_energy;
    for (std::size_t i = 1; i < r.records.size(); ++i) {
      worst = std::max(worst, (r.records[i].density_energy - r.records[i - 1].density_energy) / scale);
    }
  }
  return {worst <= 1e-8, fmt("largest relative increase %.3e", worst)};
}

Outcome convergence_program() {
  const GridPtr g = build_grid(kTwoPi, 16);
  FamilyPlan plan;
  plan.alpha = 1.0;
  plan.nu = 0.1;
  plan.orders = {2, 5, 10, 20, 40};
  plan.epsilon_rule.epsilon0 = 0.5;
  InitialParams ip;
  ip.k_min = 1.0;
  ip.k_max = 4.0;
  const InitialData d = make_initial("random-band", ip, g);
  plan.u0 = d.u0;
  plan.theta0 = d.theta0;
  plan.control.dt = 0.005;
  plan.control.t_end = 0.5;
  plan.control.observer_cadence = 5;
  const ConvergenceReport rep = run_family(plan);
  if (!rep.complete) return {false, "family incomplete: " + rep.failure};

  bool a = true;
  bool b = true;
  std::string diffs = "w diffs";
  std::string resid = "; residuals";
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    if (i + 1 < rep.rows.size()) diffs += fmt(" %.3e", r.w_diff_l2_h1);
    resid += fmt(" (%.2e,%.2e)", r.residual_w, r.residual_rho);
    if (i > 0 && i + 1 < rep.rows.size() && !(r.w_diff_l2_h1 < rep.rows[i - 1].w_diff_l2_h1)) a = false;
    if (i > 0 && !(r.residual_w < rep.rows[i - 1].residual_w && r.residual_rho < rep.rows[i - 1].residual_rho)) {
      b = false;
    }
  }
  const MemberRun& top = rep.members.back();
  const ModelParams p(plan.nu, top.epsilon, DeconvolutionSpec(g, plan.alpha, top.order));
  const double e0 = top.ledger.front().energy;
  double min_slack = 1e300;
  for (const SlackSample& s : limit_energy_inequality(p, top.samples)) min_slack = std::min(min_slack, s.slack);
  const bool c = min_slack >= -1e-6 * e0;
  std::string detail = std::string("(a) ") + (a ? "ok" : "FAIL") + " (b) " + (b ? "ok" : "FAIL") +
                       " (c) " + (c ? "ok" : "FAIL") + "; " + diffs + resid;
  detail += fmt("; min slack at N=40 %.3e vs -1e-6 E(0) = %.3e", min_slack, -1e-6 * e0);
  return {a && b && c, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome determinism() {
  std::random_device rd;
  const fs::path root = fs::temp_directory_path() / ("admb-acceptance-" + std::to_string(rd()));
  const auto config = [](const std::string& dir) {
    return "grid: {modes_per_axis: 16}\n"
           "physics: {nu: 0.1, epsilon: 0.1, alpha: 1.0, N: 5}\n"
           "time: {dt: 0.01, t_end: 0.4, observer_cadence: 5}\n"
           "initial_condition: {preset: random-band, seed: 12, k_max: 4}\n"
           "output: {directory: " + dir + ", snapshot_interval: 20}\n";
  };
  RunOptions opt;
  opt.output_root = root.string();
  bool ok = true;
  std::string detail;
  for (const char* dir : {"a", "b"}) {
    const std::string text = config(dir);
    const RunSummary s = run(parse_config(text), text, opt);
    if (s.exit_code != kExitOk) {
      fs::remove_all(root);
      return {false, "run failed: " + s.message};
    }
  }
  const bool same_ledger = slurp(root / "a" / "ledger.csv") == slurp(root / "b" / "ledger.csv") &&
                           slurp(root / "a" / "norms.csv") == slurp(root / "b" / "norms.csv");
  ok = ok && same_ledger;
  detail += same_ledger ? "ledgers identical" : "ledgers differ";

  // snapshot round trip
  const std::string snap_bytes = slurp(root / "a" / "snapshots" / "step_00000020.admb");
  const Snapshot snap = decode_snapshot(snap_bytes);
  const bool round_trip = encode_snapshot(snapshot_params(snap), snap.state) == snap_bytes;
  ok = ok && round_trip;
  detail += round_trip ? "; snapshot round trip exact" : "; snapshot round trip differs";

  // resume from the middle and land on the same final state
  const std::string text = config("c");
  RunOptions ropt = opt;
  ropt.resume_snapshot = (root / "a" / "snapshots" / "step_00000020.admb").string();
  const RunSummary s = run(parse_config(text), text, ropt);
  const bool resumed = s.exit_code == kExitOk &&
                       slurp(root / "a" / "final.admb") == slurp(root / "c" / "final.admb");
  ok = ok && resumed;
  detail += resumed ? "; resume bit-exact" : "; resume differs";
  fs::remove_all(root);
  return {ok, detail};
}

Outcome pressure_recovery() {
  const GridPtr g = build_grid(kTwoPi, 16);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (int order : {0, 3, 10}) {
      const ModelParams p(0.1, 0.1, DeconvolutionSpec(g, 1.0, order));
      const SolverState s{random_band_vector(g, seed, 0.0, 7.0), random_band_scalar(g, seed + 50, 0.0, 7.0), 0.0};
      const Tendency t = assemble_tendency(p, s);
      const VectorField proj = projected_velocity_tendency(p, s);
      double diff = 0.0;
      double scale = 0.0;
      for (int i = 0; i < 3; ++i) {
        diff = std::max(diff, oracle::max_abs_diff(t.dw[i], proj[i]));
        scale = std::max(scale, oracle::max_abs(proj[i]));
      }
      worst = std::max(worst, diff / scale);
    }
  }
  return {worst <= 1e-12, fmt("max relative difference %.3e", worst)};
}

}  // namespace

int main() {
  criterion(1, "symbol bounds 1 <= D_N <= min(N+1, A) on 32^3", 1.0, symbol_bounds);
  criterion(2, "closed-form D_N equals Van Cittert iteration", 5.0, van_cittert);
  criterion(3, "operator error ratio 1/2 for |k| = 1, alpha = 1", 1.0, operator_limit);
  criterion(4, "trilinear cancellations with 3/2 dealiasing", 10.0, cancellations);
  criterion(5, "energy equality ledger, second order in dt", 120.0, energy_equality);
  criterion(6, "a priori bound with 1% margin", 0.0, a_priori);
  criterion(7, "density energy non-increasing", 0.0, density_decay);
  criterion(8, "convergence program N = 2..40", 600.0, convergence_program);
  criterion(9, "determinism and bit-exact persistence", 60.0, determinism);
  criterion(10, "pressure route equals Leray route", 5.0, pressure_recovery);
  std::printf("%d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
