#include "admb/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "admb/errors.hpp"
#include "admb/spectral_ops.hpp"

namespace admb {

EnergyRecord energy_record(const ModelParams& params, const SolverState& state) {
  const VectorField xw = apply_half_powers(params.spec, state.w);
  const ScalarField xr = apply_half_powers(params.spec, state.rho);
  const double w0 = sobolev_norm(xw, 0.0);
  const double r0 = sobolev_norm(xr, 0.0);
  const double w1 = sobolev_norm(xw, 1.0);
  const double r1 = sobolev_norm(xr, 1.0);
  EnergyRecord rec;
  rec.time = state.time;
  rec.energy = 0.5 * (w0 * w0 + r0 * r0);
  rec.visc_dissipation = params.nu * w1 * w1;
  rec.dens_dissipation = params.epsilon * r1 * r1;
  rec.buoyancy_flux = params.buoyancy ? inner(xr, xw[2]) : 0.0;
  rec.density_energy = r0 * r0;
  return rec;
}

std::vector<double> energy_balance_residual(std::span<EnergyRecord> records) {
  const std::size_t n = records.size();
  if (n < 3) throw ConfigError("energy balance needs at least three records");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(records[i].time > records[i - 1].time)) {
      throw ConfigError("energy records must have strictly increasing times");
    }
  }
  const auto e = [&](std::size_t i) { return records[i].energy; };
  const auto t = [&](std::size_t i) { return records[i].time; };
  std::vector<double> residual(n);
  for (std::size_t i = 0; i < n; ++i) {
    double dedt = 0.0;
    if (i == 0) {
      const double h1 = t(1) - t(0);
      const double h2 = t(2) - t(1);
      dedt = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * e(0) + (h1 + h2) / (h1 * h2) * e(1) -
             h1 / (h2 * (h1 + h2)) * e(2);
    } else if (i == n - 1) {
      const double h1 = t(n - 2) - t(n - 3);
      const double h2 = t(n - 1) - t(n - 2);
      dedt = h2 / (h1 * (h1 + h2)) * e(n - 3) - (h1 + h2) / (h1 * h2) * e(n - 2) +
             (2.0 * h2 + h1) / (h2 * (h1 + h2)) * e(n - 1);
    } else {
      const double h1 = t(i) - t(i - 1);
      const double h2 = t(i + 1) - t(i);
      dedt = -h2 / (h1 * (h1 + h2)) * e(i - 1) + (h2 - h1) / (h1 * h2) * e(i) +
             h1 / (h2 * (h1 + h2)) * e(i + 1);
    }
    const EnergyRecord& r = records[i];
    residual[i] = dedt + r.visc_dissipation + r.dens_dissipation - r.buoyancy_flux;
  }
  for (std::size_t i = 0; i < n; ++i) records[i].balance_residual = residual[i];
  return residual;
}

std::vector<BoundSample> a_priori_bound(std::span<const EnergyRecord> records, double nu,
                                        double u0_norm_sq, double theta0_norm_sq) {
  std::vector<BoundSample> out;
  out.reserve(records.size());
  double integral = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const EnergyRecord& r = records[i];
    if (i > 0) {
      const EnergyRecord& p = records[i - 1];
      const double fp = p.visc_dissipation + 2.0 * p.dens_dissipation;
      const double fr = r.visc_dissipation + 2.0 * r.dens_dissipation;
      integral += 0.5 * (r.time - p.time) * (fp + fr);
    }
    const double elapsed = r.time - records.front().time;
    out.push_back({r.time, 2.0 * r.energy + integral,
                   u0_norm_sq + (1.0 + elapsed / nu) * theta0_norm_sq});
  }
  return out;
}

std::vector<SlackSample> limit_energy_inequality(const ModelParams& params,
                                                 std::span<const SolverState> states) {
  std::vector<SlackSample> out;
  out.reserve(states.size());
  for (const SolverState& s : states) {
    const Tendency tend = assemble_tendency(params, s);
    const VectorField aw = apply_A(params.spec, s.w);
    const ScalarField ar = apply_A(params.spec, s.rho);
    const double rate = inner(aw, apply_A(params.spec, tend.dw)) +
                        inner(ar, apply_A(params.spec, tend.drho));
    const double grad = sobolev_norm(aw, 1.0);
    const double flux = params.buoyancy ? inner(ar, aw[2]) : 0.0;
    out.push_back({s.time, flux - rate - params.nu * grad * grad});
  }
  return out;
}

double fraction_satisfied(std::span<const SlackSample> slack, double tolerance) {
  if (slack.empty()) return 1.0;
  const auto ok = std::count_if(slack.begin(), slack.end(),
                                [&](const SlackSample& s) { return s.slack >= -tolerance; });
  return static_cast<double>(ok) / static_cast<double>(slack.size());
}

double dual_norm(const ScalarField& f) { return sobolev_norm(f, -1.0); }

double dual_norm(const VectorField& v) { return sobolev_norm(leray_project(v), -1.0); }

MeanResidual mean_equation_residual(const ModelParams& params, const SolverState& state,
                                    const Tendency& tendency) {
  const auto& lift = params.spec.symbols().helmholtz;
  VectorField rw = tendency.dw;
  ScalarField rr = tendency.drho;
  if (params.advection) {
    rw += momentum_nonlinear(params, lift, state.w);
    rr += density_nonlinear(params, lift, state.rho, state.w);
  }
  rw.add_scaled(-params.nu, laplacian(state.w));
  rw += gradient(tendency.q);
  if (params.buoyancy) rw[2] -= state.rho;
  return {dual_norm(rw), dual_norm(rr)};
}

MeanResidual mean_equation_residual(const ModelParams& params, const SolverState& state) {
  return mean_equation_residual(params, state, assemble_tendency(params, state));
}

// ---------------------------------------------------------------------------
// Norm tables

namespace {

enum Quantity : std::size_t {
  kXwH0, kXwH1, kSwH0, kSwH1, kSwH2, kWH0, kWH1, kWH2, kDwH0, kDwH1, kDwH2,
  kDtwH0, kDtDwHm1, kQH1,
  kXrH0, kXrH1, kSrH0, kSrH1, kSrH2, kRH0, kRH1, kRH2, kDrH0, kDrH1, kDrH2,
  kDtrH0, kDtDrHm2,
  kQuantityCount
};

enum class TimeNorm { kLinf, kL2, kL43 };

struct EntrySpec {
  const char* label;
  const char* variable;
  const char* norm;
  Quantity quantity;
  TimeNorm time_norm;
  const char* order;
};

// clang-format off
constexpr EntrySpec kEntries[] = {
    {"w(a)", "A^{1/2} D_N^{1/2} w", "Linf(H0)", kXwH0, TimeNorm::kLinf, "O(1)"},
    {"w(a)", "A^{1/2} D_N^{1/2} w", "L2(H1)",   kXwH1, TimeNorm::kL2,   "O(1)"},
    {"w(b)", "D_N^{1/2} w",         "Linf(H0)", kSwH0, TimeNorm::kLinf, "O(1)"},
    {"w(b)", "D_N^{1/2} w",         "L2(H1)",   kSwH1, TimeNorm::kL2,   "O(1)"},
    {"w(c)", "D_N^{1/2} w",         "Linf(H1)", kSwH1, TimeNorm::kLinf, "O(1/alpha)"},
    {"w(c)", "D_N^{1/2} w",         "L2(H2)",   kSwH2, TimeNorm::kL2,   "O(1/alpha)"},
    {"w(d)", "w",                   "Linf(H0)", kWH0,  TimeNorm::kLinf, "O(1)"},
    {"w(d)", "w",                   "L2(H1)",   kWH1,  TimeNorm::kL2,   "O(1)"},
    {"w(e)", "w",                   "Linf(H1)", kWH1,  TimeNorm::kLinf, "O(1/alpha)"},
    {"w(e)", "w",                   "L2(H2)",   kWH2,  TimeNorm::kL2,   "O(1/alpha)"},
    {"w(f)", "D_N w",               "Linf(H0)", kDwH0, TimeNorm::kLinf, "O(1)"},
    {"w(f)", "D_N w",               "L2(H1)",   kDwH1, TimeNorm::kL2,   "O(1)"},
    {"w(g)", "D_N w",               "Linf(H1)", kDwH1, TimeNorm::kLinf, "O(sqrt(N+1)/alpha)"},
    {"w(g)", "D_N w",               "L2(H2)",   kDwH2, TimeNorm::kL2,   "O(sqrt(N+1)/alpha)"},
    {"w(h)", "dw/dt",               "L2(H0)",   kDtwH0, TimeNorm::kL2,  "O(1/alpha)"},
    {"wN(e)", "d(D_N w)/dt",        "L4/3(H-1)", kDtDwHm1, TimeNorm::kL43, "O(1)"},
    {"wN(f)", "q",                  "L2(H1)",   kQH1,  TimeNorm::kL2,   "O(1/alpha)"},
    {"rho(a)", "A^{1/2} D_N^{1/2} rho", "Linf(H0)", kXrH0, TimeNorm::kLinf, "O(1)"},
    {"rho(a)", "A^{1/2} D_N^{1/2} rho", "L2(H1)",   kXrH1, TimeNorm::kL2,   "O(1/sqrt(eps))"},
    {"rho(b)", "D_N^{1/2} rho",     "Linf(H0)", kSrH0, TimeNorm::kLinf, "O(1)"},
    {"rho(b)", "D_N^{1/2} rho",     "L2(H1)",   kSrH1, TimeNorm::kL2,   "O(1/sqrt(eps))"},
    {"rho(c)", "D_N^{1/2} rho",     "Linf(H1)", kSrH1, TimeNorm::kLinf, "O(1/alpha)"},
    {"rho(c)", "D_N^{1/2} rho",     "L2(H2)",   kSrH2, TimeNorm::kL2,   "O(1/(alpha sqrt(eps)))"},
    {"rho(d)", "rho",               "Linf(H0)", kRH0,  TimeNorm::kLinf, "O(1)"},
    {"rho(d)", "rho",               "L2(H1)",   kRH1,  TimeNorm::kL2,   "O(1/sqrt(eps))"},
    {"rho(e)", "rho",               "Linf(H1)", kRH1,  TimeNorm::kLinf, "O(1/alpha)"},
    {"rho(e)", "rho",               "L2(H2)",   kRH2,  TimeNorm::kL2,   "O(1/(alpha sqrt(eps)))"},
    {"rho(f)", "D_N rho",           "Linf(H0)", kDrH0, TimeNorm::kLinf, "O(1)"},
    {"rho(f)", "D_N rho",           "L2(H1)",   kDrH1, TimeNorm::kL2,   "O(1/sqrt(eps))"},
    {"rho(g)", "D_N rho",           "Linf(H1)", kDrH1, TimeNorm::kLinf, "O(sqrt(N+1)/alpha)"},
    {"rho(g)", "D_N rho",           "L2(H2)",   kDrH2, TimeNorm::kL2,   "O(sqrt(N+1)/(alpha sqrt(eps)))"},
    {"rho(h)", "drho/dt",           "L2(H0)",   kDtrH0, TimeNorm::kL2,  "O(1/alpha)"},
    {"rhoN(e)", "d(D_N rho)/dt",    "L2(H-2)",  kDtDrHm2, TimeNorm::kL2, "O(1)"},
};
// clang-format on

/// Trapezoidal integral of f(values)^p over time, raised to 1/p.
double time_lp(const std::vector<double>& t, const std::vector<double>& v, double p) {
  double sum = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    sum += 0.5 * (t[i] - t[i - 1]) * (std::pow(v[i], p) + std::pow(v[i - 1], p));
  }
  return std::pow(sum, 1.0 / p);
}

}  // namespace

double NormTable::value(const std::string& label, const std::string& norm) const {
  for (const auto& e : entries) {
    if (e.label == label && e.norm == norm) return e.value;
  }
  throw ConfigError("no norm-table entry " + label + " " + norm);
}

NormTableAccumulator::NormTableAccumulator(const ModelParams& params)
    : params_(params), series_(kQuantityCount) {}

void NormTableAccumulator::add(const SolverState& state) {
  add(state, assemble_tendency(params_, state));
}

void NormTableAccumulator::add(const SolverState& state, const Tendency& tend) {
  if (!times_.empty() && !(state.time > times_.back())) {
    throw ConfigError("norm-table samples must have increasing times");
  }
  const auto& sym = params_.spec.symbols();
  std::vector<double> root(sym.deconv.size());
  std::transform(sym.deconv.begin(), sym.deconv.end(), root.begin(),
                 [](double d) { return std::sqrt(d); });

  std::array<double, kQuantityCount> q{};
  {
    const VectorField& w = state.w;
    const VectorField xw = apply_half_powers(params_.spec, w);
    const VectorField sw = apply_symbol(root, w);
    const VectorField dw = deconvolve(params_.spec, w);
    q[kXwH0] = sobolev_norm(xw, 0.0);
    q[kXwH1] = sobolev_norm(xw, 1.0);
    q[kSwH0] = sobolev_norm(sw, 0.0);
    q[kSwH1] = sobolev_norm(sw, 1.0);
    q[kSwH2] = sobolev_norm(sw, 2.0);
    q[kWH0] = sobolev_norm(w, 0.0);
    q[kWH1] = sobolev_norm(w, 1.0);
    q[kWH2] = sobolev_norm(w, 2.0);
    q[kDwH0] = sobolev_norm(dw, 0.0);
    q[kDwH1] = sobolev_norm(dw, 1.0);
    q[kDwH2] = sobolev_norm(dw, 2.0);
    q[kDtwH0] = sobolev_norm(tend.dw, 0.0);
    q[kDtDwHm1] = sobolev_norm(deconvolve(params_.spec, tend.dw), -1.0);
    q[kQH1] = sobolev_norm(tend.q, 1.0);
  }
  {
    const ScalarField& r = state.rho;
    const ScalarField xr = apply_half_powers(params_.spec, r);
    const ScalarField sr = apply_symbol(root, r);
    const ScalarField dr = deconvolve(params_.spec, r);
    q[kXrH0] = sobolev_norm(xr, 0.0);
    q[kXrH1] = sobolev_norm(xr, 1.0);
    q[kSrH0] = sobolev_norm(sr, 0.0);
    q[kSrH1] = sobolev_norm(sr, 1.0);
    q[kSrH2] = sobolev_norm(sr, 2.0);
    q[kRH0] = sobolev_norm(r, 0.0);
    q[kRH1] = sobolev_norm(r, 1.0);
    q[kRH2] = sobolev_norm(r, 2.0);
    q[kDrH0] = sobolev_norm(dr, 0.0);
    q[kDrH1] = sobolev_norm(dr, 1.0);
    q[kDrH2] = sobolev_norm(dr, 2.0);
    q[kDtrH0] = sobolev_norm(tend.drho, 0.0);
    q[kDtDrHm2] = sobolev_norm(deconvolve(params_.spec, tend.drho), -2.0);
  }
  times_.push_back(state.time);
  for (std::size_t i = 0; i < kQuantityCount; ++i) series_[i].push_back(q[i]);
}

NormTable NormTableAccumulator::table() const {
  if (times_.empty()) throw ConfigError("norm table needs at least one sample");
  NormTable out;
  for (const EntrySpec& e : kEntries) {
    const auto& v = series_[e.quantity];
    double value = 0.0;
    switch (e.time_norm) {
      case TimeNorm::kLinf:
        value = *std::max_element(v.begin(), v.end());
        break;
      case TimeNorm::kL2:
        value = time_lp(times_, v, 2.0);
        break;
      case TimeNorm::kL43:
        value = time_lp(times_, v, 4.0 / 3.0);
        break;
    }
    out.entries.push_back({e.label, e.variable, e.norm, value, e.order});
  }
  return out;
}

NormTable norm_table(const ModelParams& params, std::span<const SolverState> states) {
  NormTableAccumulator acc(params);
  for (const auto& s : states) acc.add(s);
  return acc.table();
}

}  // namespace admb
