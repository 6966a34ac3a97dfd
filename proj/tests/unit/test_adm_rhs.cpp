#include <gtest/gtest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "admb/errors.hpp"
#include "admb/initial.hpp"
#include "admb/rhs.hpp"
#include "admb/spectral_ops.hpp"

namespace admb {
namespace {

constexpr double kTwoPi = 6.283185307179586;

/// G div(a (x) b) by exact convolution: component i = G sum_j i k_j (a_i b_j)_k.
ScalarField flux_divergence_oracle(const GridPtr& g, double alpha,
                                   const std::array<oracle::ModeMap, 3>& a,
                                   const std::array<oracle::ModeMap, 3>& b, int i) {
  ScalarField out(g);
  const double s = g->scale();
  for (int j = 0; j < 3; ++j) {
    const ScalarField prod = oracle::to_field(g, oracle::product(a[i], b[j]));
    for (std::size_t slot : g->retained_slots()) {
      const WaveIndex k = g->index(slot);
      const int kj = j == 0 ? k.k1 : (j == 1 ? k.k2 : k.k3);
      out[slot] += Complex(0.0, s * kj) * prod[slot];
    }
  }
  return oracle::helmholtz(out, alpha);
}

struct Fixture {
  GridPtr grid = build_grid(3.0, 8);
  double alpha = 0.8;
  int order = 3;
  ModelParams params{0.05, 0.2, DeconvolutionSpec(grid, alpha, order)};
  VectorField w = random_band_vector(grid, 31, 0.0, 3.0);
  ScalarField rho = random_band_scalar(grid, 32, 0.0, 3.0);
};

TEST(Nonlinear, MomentumMatchesExactConvolution) {
  Fixture f;
  std::array<oracle::ModeMap, 3> dw;
  for (int i = 0; i < 3; ++i) dw[i] = oracle::modes_of(oracle::van_cittert(f.w[i], f.alpha, f.order));
  const VectorField nl = momentum_nonlinear(f.params, f.w);
  for (int i = 0; i < 3; ++i) {
    const ScalarField ref = flux_divergence_oracle(f.grid, f.alpha, dw, dw, i);
    EXPECT_LT(oracle::max_abs_diff(nl[i], ref), 1e-13 * oracle::max_abs(ref)) << "component " << i;
  }
}

TEST(Nonlinear, DensityMatchesExactConvolution) {
  Fixture f;
  const oracle::ModeMap drho = oracle::modes_of(oracle::van_cittert(f.rho, f.alpha, f.order));
  std::array<oracle::ModeMap, 3> dw;
  for (int i = 0; i < 3; ++i) dw[i] = oracle::modes_of(oracle::van_cittert(f.w[i], f.alpha, f.order));
  const std::array<oracle::ModeMap, 3> rr{drho, drho, drho};
  // G div(rho w) = component 0 of the oracle with a = (rho, rho, rho), b = w
  const ScalarField ref = flux_divergence_oracle(f.grid, f.alpha, rr, dw, 0);
  const ScalarField nl = density_nonlinear(f.params, f.rho, f.w);
  EXPECT_LT(oracle::max_abs_diff(nl, ref), 1e-13 * oracle::max_abs(ref));
}

TEST(Nonlinear, TrilinearCancellations) {
  Fixture f;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const VectorField w = random_band_vector(f.grid, seed, 0.0, 3.0);
    const ScalarField rho = random_band_scalar(f.grid, seed + 100, 0.0, 3.0);
    const VectorField nl = momentum_nonlinear(f.params, w);
    const VectorField test = apply_A(f.params.spec, deconvolve(f.params.spec, w));
    EXPECT_LT(std::abs(inner(nl, test)), 1e-12 * sobolev_norm(nl, 0) * sobolev_norm(test, 0));
    const ScalarField nr = density_nonlinear(f.params, rho, w);
    const ScalarField tr = apply_A(f.params.spec, deconvolve(f.params.spec, rho));
    EXPECT_LT(std::abs(inner(nr, tr)), 1e-12 * sobolev_norm(nr, 0) * sobolev_norm(tr, 0));
  }
}

TEST(Pressure, SolvesPoissonProblem) {
  Fixture f;
  const ScalarField q = pressure_solve(f.params, f.rho, f.w);
  VectorField forcing(f.grid);
  forcing[2] = f.rho;
  forcing -= momentum_nonlinear(f.params, f.w);
  const ScalarField lhs = laplacian(q);
  const ScalarField rhs = divergence(forcing);
  EXPECT_LT(oracle::max_abs_diff(lhs, rhs), 1e-13 * oracle::max_abs(rhs));
}

TEST(Pressure, RouteAgreesWithProjection) {
  Fixture f;
  const SolverState s{f.w, f.rho, 0.0};
  const Tendency t = assemble_tendency(f.params, s);
  const VectorField p = projected_velocity_tendency(f.params, s);
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT(oracle::max_abs_diff(t.dw[i], p[i]), 1e-13 * oracle::max_abs(p[i]));
  }
  EXPECT_LT(max_divergence(t.dw), 1e-13);
}

TEST(Tendency, LinearPartIsExact) {
  Fixture f;
  ModelParams p = f.params;
  p.advection = false;
  const Tendency t = assemble_tendency(p, SolverState{f.w, f.rho, 0.0});
  const double s = f.grid->scale();
  for (std::size_t slot : f.grid->retained_slots()) {
    const WaveIndex k = f.grid->index(slot);
    const double ksq = s * s * k.norm_sq();
    EXPECT_NEAR(std::abs(t.drho[slot] + p.epsilon * ksq * f.rho[slot]), 0.0, 1e-14);
    // buoyancy projected by hand: e3 - k k3 / |k|^2
    const std::array<double, 3> kv{s * k.k1, s * k.k2, s * k.k3};
    for (int i = 0; i < 3; ++i) {
      const double proj = (i == 2 ? 1.0 : 0.0) - kv[static_cast<std::size_t>(i)] * kv[2] / ksq;
      const Complex expect = proj * f.rho[slot] - p.nu * ksq * f.w[i][slot];
      EXPECT_NEAR(std::abs(t.dw[i][slot] - expect), 0.0, 1e-14);
    }
  }
}

TEST(Tendency, ZeroStateHasZeroTendency) {
  Fixture f;
  const Tendency t = assemble_tendency(f.params, SolverState{VectorField(f.grid), ScalarField(f.grid), 0.0});
  EXPECT_EQ(sobolev_norm(t.dw, 0.0), 0.0);
  EXPECT_EQ(sobolev_norm(t.drho, 0.0), 0.0);
  EXPECT_EQ(sobolev_norm(t.q, 0.0), 0.0);
}

TEST(Params, Validation) {
  const GridPtr g = build_grid(kTwoPi, 8);
  const DeconvolutionSpec spec(g, 1.0, 2);
  EXPECT_THROW(ModelParams(0.0, 0.1, spec), ConfigError);
  EXPECT_THROW(ModelParams(0.1, 0.0, spec), ConfigError);
  EXPECT_THROW(ModelParams(0.1, 1.0, spec), ConfigError);
  EXPECT_NO_THROW(ModelParams(0.1, 0.999, spec));
}

}  // namespace
}  // namespace admb
