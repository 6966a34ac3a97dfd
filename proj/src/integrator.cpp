#include "admb/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "admb/spectral_ops.hpp"
#include "admb/transform.hpp"

namespace admb {

namespace {

// Williamson 2N-storage RK3: q <- a_i q + dt F(u_i); v <- v + b_i q.
constexpr std::array<double, 3> kA{0.0, -5.0 / 9.0, -153.0 / 128.0};
constexpr std::array<double, 3> kB{1.0 / 3.0, 15.0 / 16.0, 8.0 / 15.0};
constexpr std::array<double, 3> kC{0.0, 1.0 / 3.0, 3.0 / 4.0};

constexpr double kSpeedFloor = 1e-12;

/// exp(-coef |k|^2 tau) per slot.
std::vector<double> decay(const TorusGrid& g, double coef, double tau) {
  std::vector<double> out(g.spectral_size(), 0.0);
  for (std::size_t s : g.retained_slots()) out[s] = std::exp(-coef * g.k_sq(s) * tau);
  return out;
}

void scale_in_place(const std::vector<double>& symbol, ScalarField& f) {
  for (std::size_t s : f.grid().retained_slots()) f[s] *= symbol[s];
}

void scale_in_place(const std::vector<double>& symbol, VectorField& v) {
  for (int i = 0; i < 3; ++i) scale_in_place(symbol, v[i]);
}

}  // namespace

void StepControl::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
    throw ConfigError("cfl_safety must lie in (0, 1]");
  }
  if (observer_cadence < 1) throw ConfigError("observer_cadence must be >= 1");
}

SolverState init_state(const VectorField& u0, const ScalarField& theta0,
                       const ModelParams& params) {
  require_same_grid(params.spec.grid(), u0.grid());
  require_same_grid(params.spec.grid(), theta0.grid());
  const double scale = sobolev_norm(u0, 1.0);
  if (max_divergence(u0) > 1e-12 * scale + 1e-300) {
    throw ConfigError("initial velocity is not divergence-free");
  }
  SolverState state{helmholtz_filter(params.spec, u0), helmholtz_filter(params.spec, theta0), 0.0};
  state.w.clean();
  state.rho.clean();
  return state;
}

double advective_speed(const ModelParams& params, const VectorField& w) {
  const VectorField lifted = deconvolve(params.spec, w);
  std::array<PhysicalField, 3> u{to_physical(lifted[0]), to_physical(lifted[1]),
                                 to_physical(lifted[2])};
  double peak = 0.0;
  for (std::size_t i = 0; i < u[0].values.size(); ++i) {
    const double s = u[0].values[i] * u[0].values[i] + u[1].values[i] * u[1].values[i] +
                     u[2].values[i] * u[2].values[i];
    peak = std::max(peak, s);
  }
  return std::sqrt(peak);
}

double max_stable_dt(const ModelParams& params, const SolverState& state, double cfl_safety) {
  return cfl_safety * state.w.grid().spacing() / (advective_speed(params, state.w) + kSpeedFloor);
}

SolverState step(const ModelParams& params, const SolverState& state, const StepControl& control) {
  return step(params, state, control.dt, control.cfl_safety);
}

SolverState step(const ModelParams& params, const SolverState& state, double dt,
                 double cfl_safety) {
  const double limit = max_stable_dt(params, state, cfl_safety);
  if (dt > limit) {
    throw NumericalError("CFL violation at t = " + std::to_string(state.time) + ": dt = " +
                         std::to_string(dt) + " exceeds " + std::to_string(limit));
  }
  const TorusGrid& g = state.w.grid();
  const double nu = params.nu;
  const double eps = params.epsilon;

  // Integrating-factor frame anchored at t_n: v = exp(-L (t - t_n)) u.
  VectorField vw = state.w;
  ScalarField vr = state.rho;
  VectorField qw(state.w.grid_ptr());
  ScalarField qr(state.rho.grid_ptr());
  for (std::size_t i = 0; i < 3; ++i) {
    VectorField uw = vw;
    ScalarField ur = vr;
    if (kC[i] != 0.0) {
      scale_in_place(decay(g, nu, kC[i] * dt), uw);
      scale_in_place(decay(g, eps, kC[i] * dt), ur);
    }
    ExplicitTerms f = explicit_terms(params, uw, ur);
    if (kC[i] != 0.0) {
      scale_in_place(decay(g, nu, -kC[i] * dt), f.w);
      scale_in_place(decay(g, eps, -kC[i] * dt), f.rho);
    }
    qw *= kA[i];
    qw.add_scaled(dt, f.w);
    qr *= kA[i];
    qr.add_scaled(dt, f.rho);
    vw.add_scaled(kB[i], qw);
    vr.add_scaled(kB[i], qr);
  }
  scale_in_place(decay(g, nu, dt), vw);
  scale_in_place(decay(g, eps, dt), vr);

  SolverState next{leray_project(vw), std::move(vr), state.time + dt};
  next.w.clean();
  next.rho.clean();
  return next;
}

void check_invariants(const SolverState& state) {
  const double h1 = sobolev_norm(state.w, 1.0);
  if (!std::isfinite(h1) || !std::isfinite(sobolev_norm(state.rho, 0.0))) {
    throw NumericalError("non-finite field values at t = " + std::to_string(state.time));
  }
  if (max_divergence(state.w) > 1e-12 * (h1 + 1e-300)) {
    throw NumericalError("velocity lost incompressibility at t = " + std::to_string(state.time));
  }
  const double scale = sobolev_norm(state.w, 0.0) + sobolev_norm(state.rho, 0.0);
  double herm = hermitian_defect(state.rho);
  double mean = std::abs(state.rho[0]);
  for (int i = 0; i < 3; ++i) {
    herm = std::max(herm, hermitian_defect(state.w[i]));
    mean = std::max(mean, std::abs(state.w[i][0]));
  }
  if (mean != 0.0) throw NumericalError("non-zero mean at t = " + std::to_string(state.time));
  if (herm > 1e-12 * (scale + 1e-300)) {
    throw NumericalError("Hermitian symmetry broken at t = " + std::to_string(state.time));
  }
}

std::int64_t step_count(double t0, double t_end, double dt) {
  const double span = t_end - t0;
  if (span <= 0.0) return 0;
  const double ratio = span / dt;
  const double whole = std::round(ratio);
  if (whole >= 1.0 && std::abs(ratio - whole) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<std::int64_t>(whole);
  }
  return static_cast<std::int64_t>(std::ceil(ratio));
}

IntegrationResult integrate(const ModelParams& params, SolverState state,
                            const StepControl& control, std::span<const Observer> observers) {
  control.validate();
  const std::int64_t total = step_count(state.time, control.t_end, control.dt);
  if (total == 0) return {std::move(state), 0};
  const double t0 = state.time;
  const auto notify = [&](const SolverState& s, std::int64_t n) {
    for (const auto& obs : observers) obs(s, n);
  };
  notify(state, 0);
  for (std::int64_t n = 1; n <= total; ++n) {
    double dt = control.dt;
    if (n == total) {
      // the last step lands exactly on t_end
      dt = control.t_end - (t0 + static_cast<double>(n - 1) * control.dt);
      if (std::abs(dt - control.dt) <= 1e-9 * control.dt) dt = control.dt;
    }
    try {
      SolverState next = step(params, state, dt, control.cfl_safety);
      if (control.strict_invariants) check_invariants(next);
      state = std::move(next);
    } catch (const NumericalError& e) {
      throw IntegrationError(e.what(), std::move(state), n - 1);
    }
    if (n % control.observer_cadence == 0 || n == total) notify(state, n);
  }
  return {std::move(state), total};
}

}  // namespace admb
