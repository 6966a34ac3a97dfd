#include "admb/rhs.hpp"

#include <cmath>
#include <string>

#include "admb/errors.hpp"
#include "admb/spectral_ops.hpp"
#include "admb/transform.hpp"

namespace admb {

namespace {

constexpr Complex kI{0.0, 1.0};

PhysicalField product(const PhysicalField& a, const PhysicalField& b) {
  PhysicalField out{a.points_per_axis, std::vector<double>(a.values.size())};
  for (std::size_t i = 0; i < a.values.size(); ++i) out.values[i] = a.values[i] * b.values[i];
  return out;
}

VectorField lifted_momentum_flux(const ModelParams& params, const std::array<PhysicalField, 3>& u) {
  const GridPtr& grid = params.spec.grid_ptr();
  const TorusGrid& g = *grid;
  // symmetric tensor T_ij = u_i u_j, six independent products
  std::array<std::array<ScalarField, 3>, 3> t{
      {{ScalarField(grid), ScalarField(grid), ScalarField(grid)},
       {ScalarField(grid), ScalarField(grid), ScalarField(grid)},
       {ScalarField(grid), ScalarField(grid), ScalarField(grid)}}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      t[i][j] = from_physical(grid, product(u[i], u[j]));
      if (j != i) t[j][i] = t[i][j];
    }
  }
  VectorField out(grid);
  const auto& filter = params.spec.symbols().filter;
  for (std::size_t s : g.retained_slots()) {
    const auto k = g.wavevector(s);
    for (std::size_t i = 0; i < 3; ++i) {
      const Complex div = kI * (k[0] * t[i][0][s] + k[1] * t[i][1][s] + k[2] * t[i][2][s]);
      out[static_cast<int>(i)][s] = filter[s] * div;
    }
  }
  return out;
}

ScalarField lifted_density_flux(const ModelParams& params, const std::array<PhysicalField, 3>& u,
                                const PhysicalField& phi) {
  const GridPtr& grid = params.spec.grid_ptr();
  const TorusGrid& g = *grid;
  std::array<ScalarField, 3> flux{ScalarField(grid), ScalarField(grid), ScalarField(grid)};
  for (std::size_t j = 0; j < 3; ++j) flux[j] = from_physical(grid, product(phi, u[j]));
  ScalarField out(grid);
  const auto& filter = params.spec.symbols().filter;
  for (std::size_t s : g.retained_slots()) {
    const auto k = g.wavevector(s);
    out[s] = filter[s] * kI * (k[0] * flux[0][s] + k[1] * flux[1][s] + k[2] * flux[2][s]);
  }
  return out;
}

std::array<PhysicalField, 3> lift_velocity(const std::vector<double>& lift, const VectorField& w,
                                           int m) {
  return {to_physical(apply_symbol(lift, w[0]), m), to_physical(apply_symbol(lift, w[1]), m),
          to_physical(apply_symbol(lift, w[2]), m)};
}

void check_inputs(const ModelParams& params, const TorusGrid& g) {
  require_same_grid(params.spec.grid(), g);
}

/// rho e3 - G div(D_N w (x) D_N w), the field whose divergence drives q.
VectorField momentum_forcing(const ModelParams& params, const ScalarField& rho,
                             const VectorField& nonlinear) {
  VectorField f(rho.grid_ptr());
  if (params.advection) f -= nonlinear;
  if (params.buoyancy) f[2] += rho;
  return f;
}

ScalarField pressure_from_forcing(const VectorField& f) {
  const TorusGrid& g = f.grid();
  ScalarField q(f.grid_ptr());
  for (std::size_t s : g.retained_slots()) {
    const auto k = g.wavevector(s);
    const Complex ikf = kI * (k[0] * f[0][s] + k[1] * f[1][s] + k[2] * f[2][s]);
    q[s] = -ikf / g.k_sq(s);
  }
  return q;
}

}  // namespace

ModelParams::ModelParams(double nu_, double epsilon_, DeconvolutionSpec spec_)
    : nu(nu_), epsilon(epsilon_), spec(std::move(spec_)) {
  validate();
}

void ModelParams::validate() const {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw ConfigError("nu must satisfy nu > 0, got " + std::to_string(nu));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ConfigError("epsilon must satisfy 0 < epsilon < 1, got " + std::to_string(epsilon));
  }
}

VectorField momentum_nonlinear(const ModelParams& params, const std::vector<double>& lift,
                               const VectorField& w) {
  check_inputs(params, w.grid());
  const int m = dealiased_size(w.grid());
  return lifted_momentum_flux(params, lift_velocity(lift, w, m));
}

ScalarField density_nonlinear(const ModelParams& params, const std::vector<double>& lift,
                              const ScalarField& rho, const VectorField& w) {
  check_inputs(params, w.grid());
  check_inputs(params, rho.grid());
  const int m = dealiased_size(w.grid());
  return lifted_density_flux(params, lift_velocity(lift, w, m),
                             to_physical(apply_symbol(lift, rho), m));
}

VectorField momentum_nonlinear(const ModelParams& params, const VectorField& w) {
  return momentum_nonlinear(params, params.spec.symbols().deconv, w);
}

ScalarField density_nonlinear(const ModelParams& params, const ScalarField& rho,
                              const VectorField& w) {
  return density_nonlinear(params, params.spec.symbols().deconv, rho, w);
}

ScalarField pressure_solve(const ModelParams& params, const ScalarField& rho,
                           const VectorField& w) {
  check_inputs(params, rho.grid());
  VectorField nl = params.advection ? momentum_nonlinear(params, w) : VectorField(w.grid_ptr());
  return pressure_from_forcing(momentum_forcing(params, rho, nl));
}

ExplicitTerms explicit_terms(const ModelParams& params, const VectorField& w,
                             const ScalarField& rho) {
  check_inputs(params, w.grid());
  check_inputs(params, rho.grid());
  const GridPtr& grid = w.grid_ptr();
  VectorField nl_w(grid);
  ScalarField nl_rho(grid);
  if (params.advection) {
    const auto& lift = params.spec.symbols().deconv;
    const int m = dealiased_size(*grid);
    const auto u = lift_velocity(lift, w, m);
    nl_w = lifted_momentum_flux(params, u);
    nl_rho = lifted_density_flux(params, u, to_physical(apply_symbol(lift, rho), m));
  }
  VectorField forcing = momentum_forcing(params, rho, nl_w);
  nl_rho *= -1.0;
  return {leray_project(forcing), std::move(nl_rho)};
}

Tendency assemble_tendency(const ModelParams& params, const SolverState& state) {
  check_inputs(params, state.w.grid());
  check_inputs(params, state.rho.grid());
  const GridPtr& grid = state.w.grid_ptr();
  VectorField nl_w(grid);
  ScalarField nl_rho(grid);
  if (params.advection) {
    const auto& lift = params.spec.symbols().deconv;
    const int m = dealiased_size(*grid);
    const auto u = lift_velocity(lift, state.w, m);
    nl_w = lifted_momentum_flux(params, u);
    nl_rho = lifted_density_flux(params, u, to_physical(apply_symbol(lift, state.rho), m));
  }
  VectorField forcing = momentum_forcing(params, state.rho, nl_w);
  ScalarField q = pressure_from_forcing(forcing);

  VectorField dw = forcing - gradient(q);
  dw.add_scaled(params.nu, laplacian(state.w));
  dw = leray_project(dw);

  ScalarField drho = laplacian(state.rho);
  drho *= params.epsilon;
  drho -= nl_rho;
  return {std::move(dw), std::move(drho), std::move(q)};
}

VectorField projected_velocity_tendency(const ModelParams& params, const SolverState& state) {
  VectorField nl = params.advection ? momentum_nonlinear(params, state.w)
                                    : VectorField(state.w.grid_ptr());
  VectorField f = momentum_forcing(params, state.rho, nl);
  f.add_scaled(params.nu, laplacian(state.w));
  return leray_project(f);
}

}  // namespace admb
