#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "../support/oracles.hpp"
#include "admb/errors.hpp"
#include "admb/initial.hpp"
#include "admb/spectral_ops.hpp"
#include "admb/transform.hpp"

namespace admb {
namespace {

constexpr double kTwoPi = 6.283185307179586;

TEST(Grid, RejectsBadGeometry) {
  EXPECT_THROW(TorusGrid::create(0.0, 16), ConfigError);
  EXPECT_THROW(TorusGrid::create(-1.0, 16), ConfigError);
  EXPECT_THROW(TorusGrid::create(kTwoPi, 15), ConfigError);
  EXPECT_THROW(TorusGrid::create(kTwoPi, 2), ConfigError);
  EXPECT_THROW(TorusGrid::create(kTwoPi, 16, 8), ConfigError);
  EXPECT_NO_THROW(TorusGrid::create(kTwoPi, 16, 7));
}

TEST(Grid, RetainedSetIsBallWithoutMeanOrNyquist) {
  const GridPtr g = build_grid(kTwoPi, 8);
  EXPECT_EQ(g->truncation_radius(), 3);
  EXPECT_FALSE(g->retained(WaveIndex{0, 0, 0}));
  EXPECT_FALSE(g->retained(WaveIndex{4, 0, 0}));
  EXPECT_FALSE(g->retained(WaveIndex{2, 2, 2}));  // |k|^2 = 12 > 9
  EXPECT_TRUE(g->retained(WaveIndex{2, 2, 1}));
  EXPECT_TRUE(g->retained(WaveIndex{0, 0, -3}));
  // every retained mode has its mirror retained
  for (const WaveIndex& k : g->lattice()) {
    EXPECT_TRUE(g->retained(WaveIndex{-k.k1, -k.k2, -k.k3}));
    EXPECT_LE(k.norm_sq(), 9);
    EXPECT_GT(k.norm_sq(), 0);
  }
}

TEST(Grid, LatticeIsLexicographicAndCountsBothPairMembers) {
  const GridPtr g = build_grid(kTwoPi, 8);
  const auto lattice = g->lattice();
  int count = 0;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c) count += (a * a + b * b + c * c > 0 && a * a + b * b + c * c <= 9);
  EXPECT_EQ(static_cast<int>(lattice.size()), count);
  for (std::size_t i = 1; i < lattice.size(); ++i) {
    const auto& p = lattice[i - 1];
    const auto& q = lattice[i];
    EXPECT_LT(std::tie(p.k1, p.k2, p.k3), std::tie(q.k1, q.k2, q.k3));
  }
  double weight = 0.0;
  for (std::size_t s : g->retained_slots()) weight += g->weight(s);
  EXPECT_EQ(weight, static_cast<double>(count));
}

TEST(Grid, ScaleFollowsBoxLength) {
  const GridPtr g = build_grid(2.0, 8);
  EXPECT_DOUBLE_EQ(g->scale(), kTwoPi / 2.0);
  const std::size_t s = g->slot(1, 2, 0);
  EXPECT_DOUBLE_EQ(g->k_sq(s), 5.0 * g->scale() * g->scale());
}

TEST(Field, SetMaintainsHermitianPair) {
  const GridPtr g = build_grid(kTwoPi, 8);
  ScalarField f(g);
  f.set({1, -2, 0}, Complex(0.5, 0.25));
  EXPECT_EQ(f.at({-1, 2, 0}), Complex(0.5, -0.25));
  f.set({0, 1, -2}, Complex(1.0, 2.0));
  EXPECT_EQ(f.at({0, -1, 2}), Complex(1.0, -2.0));
  EXPECT_EQ(hermitian_defect(f), 0.0);
  EXPECT_THROW(f.set({0, 0, 0}, 1.0), ConfigError);
  EXPECT_THROW(f.set({3, 3, 0}, 1.0), ConfigError);
}

TEST(Field, OperationsOnDifferentGridsThrow) {
  ScalarField a(build_grid(kTwoPi, 8));
  ScalarField b(build_grid(kTwoPi, 12));
  EXPECT_THROW(a += b, GridMismatch);
  EXPECT_THROW(inner(a, b), GridMismatch);
}

TEST(Transform, SynthesisMatchesDirectSum) {
  const GridPtr g = build_grid(kTwoPi, 8);
  const ScalarField f = random_band_scalar(g, 7, 0.0, 3.0);
  for (int m : {8, dealiased_size(*g)}) {
    const PhysicalField p = to_physical(f, m);
    const std::vector<double> ref = oracle::synthesize(f, m);
    ASSERT_EQ(p.values.size(), ref.size());
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      err = std::max(err, std::abs(p.values[i] - ref[i]));
      scale = std::max(scale, std::abs(ref[i]));
    }
    EXPECT_LT(err, 1e-13 * scale) << "m = " << m;
  }
}

TEST(Transform, RoundTripIsIdentityOnRetainedModes) {
  const GridPtr g = build_grid(kTwoPi, 16);
  const ScalarField f = random_band_scalar(g, 3, 0.0, 7.0);
  for (int m : {16, 24}) {
    const ScalarField back = from_physical(g, to_physical(f, m));
    EXPECT_LT(oracle::max_abs_diff(back, f), 1e-15 * 16 * oracle::max_abs(f));
    EXPECT_EQ(hermitian_defect(back), 0.0);
  }
}

TEST(Transform, PaddedProductIsAliasFree) {
  // The 3/2 grid must reproduce the exact convolution on retained modes.
  const GridPtr g = build_grid(kTwoPi, 8);
  const ScalarField a = random_band_scalar(g, 11, 0.0, 3.0);
  const ScalarField b = random_band_scalar(g, 12, 0.0, 3.0);
  const int m = dealiased_size(*g);
  PhysicalField pa = to_physical(a, m);
  const PhysicalField pb = to_physical(b, m);
  for (std::size_t i = 0; i < pa.values.size(); ++i) pa.values[i] *= pb.values[i];
  const ScalarField fast = from_physical(g, pa);
  const ScalarField exact =
      oracle::to_field(g, oracle::product(oracle::modes_of(a), oracle::modes_of(b)));
  EXPECT_LT(oracle::max_abs_diff(fast, exact), 1e-14);
}

TEST(Transform, UnpaddedProductAliases) {
  // Control for the test above: on the plain n grid the product is polluted.
  const GridPtr g = build_grid(kTwoPi, 8);
  const ScalarField a = random_band_scalar(g, 11, 0.0, 3.0);
  const ScalarField b = random_band_scalar(g, 12, 0.0, 3.0);
  PhysicalField pa = to_physical(a, 8);
  const PhysicalField pb = to_physical(b, 8);
  for (std::size_t i = 0; i < pa.values.size(); ++i) pa.values[i] *= pb.values[i];
  const ScalarField exact =
      oracle::to_field(g, oracle::product(oracle::modes_of(a), oracle::modes_of(b)));
  EXPECT_GT(oracle::max_abs_diff(from_physical(g, pa), exact), 1e-6);
}

TEST(Transform, RejectsCoarserOrOddGrid) {
  const GridPtr g = build_grid(kTwoPi, 8);
  ScalarField f(g);
  EXPECT_THROW(to_physical(f, 6), ConfigError);
  EXPECT_THROW(to_physical(f, 9), ConfigError);
  PhysicalField bad{8, std::vector<double>(10)};
  EXPECT_THROW(from_physical(g, bad), ConfigError);
}

TEST(SpectralOps, DerivativesOfSingleMode) {
  // f = cos(2 x + y) on a box of side 3: grad f = -sin(...) (2, 1, 0) s
  const double L = 3.0;
  const GridPtr g = build_grid(L, 8);
  const double s = kTwoPi / L;
  ScalarField f(g);
  f.set({2, 1, 0}, 0.5);
  const VectorField grad = gradient(f);
  EXPECT_NEAR(std::abs(grad[0].at({2, 1, 0}) - Complex(0, 2 * s * 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(grad[1].at({2, 1, 0}) - Complex(0, s * 0.5)), 0.0, 1e-15);
  EXPECT_EQ(grad[2].at({2, 1, 0}), Complex{});
  const ScalarField lap = laplacian(f);
  EXPECT_NEAR(lap.at({2, 1, 0}).real(), -5 * s * s * 0.5, 1e-13);
  EXPECT_LT(oracle::max_abs_diff(divergence(grad), lap), 1e-13);
}

TEST(SpectralOps, LerayProjectionIsIdempotentAndSolenoidal) {
  const GridPtr g = build_grid(kTwoPi, 8);
  const VectorField v(random_band_scalar(g, 1, 0, 3), random_band_scalar(g, 2, 0, 3),
                      random_band_scalar(g, 3, 0, 3));
  const VectorField p = leray_project(v);
  EXPECT_LT(max_divergence(p), 1e-15);
  const VectorField pp = leray_project(p);
  for (int i = 0; i < 3; ++i) EXPECT_LT(oracle::max_abs_diff(pp[i], p[i]), 1e-16);
  // orthogonal decomposition: (v - Pv, Pv) = 0
  EXPECT_NEAR(inner(v - p, p), 0.0, 1e-15);
  // gradients are annihilated
  const VectorField grad = gradient(random_band_scalar(g, 4, 0, 3));
  EXPECT_LT(sobolev_norm(leray_project(grad), 0.0), 1e-15);
}

TEST(SpectralOps, ParsevalMatchesPhysicalMean) {
  const GridPtr g = build_grid(kTwoPi, 8);
  const ScalarField a = random_band_scalar(g, 21, 0.0, 3.0);
  const ScalarField b = random_band_scalar(g, 22, 0.0, 3.0);
  // the product has |k| <= 6 < 8, so the 12^3 rule integrates it exactly
  const auto pa = oracle::synthesize(a, 12);
  const auto pb = oracle::synthesize(b, 12);
  double mean = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) mean += pa[i] * pb[i];
  mean /= static_cast<double>(pa.size());
  EXPECT_NEAR(inner(a, b), mean, 1e-14);
  EXPECT_NEAR(sobolev_norm(a, 0.0), 1.0, 1e-14);
}

TEST(SpectralOps, SobolevNormOfSingleMode) {
  const GridPtr g = build_grid(kTwoPi, 8);
  ScalarField f(g);
  f.set({1, 1, 1}, 0.5);  // 2 cos(x + y + z) / 2, |k|^2 = 3
  EXPECT_NEAR(sobolev_norm(f, 0.0), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(sobolev_norm(f, 1.0), std::sqrt(0.5 * 3.0), 1e-15);
  EXPECT_NEAR(sobolev_norm(f, -1.0), std::sqrt(0.5 / 3.0), 1e-15);
}

TEST(SpectralOps, TruncateZeroesOuterModes) {
  const GridPtr g = build_grid(kTwoPi, 16);
  const ScalarField f = random_band_scalar(g, 5, 0.0, 7.0);
  const ScalarField t = truncate(f, 3);
  for (const WaveIndex& k : g->lattice()) {
    if (k.norm_sq() > 9) {
      EXPECT_EQ(t.at(k), Complex{});
    } else {
      EXPECT_EQ(t.at(k), f.at(k));
    }
  }
}

TEST(Initial, PresetsAreDivergenceFreeAndDeterministic) {
  const GridPtr g = build_grid(kTwoPi, 16);
  const InitialData tg = make_initial("taylor-green", {}, g);
  EXPECT_LE(max_divergence(tg.u0), 1e-14);
  // u1 = sin x cos y at x = pi/2, y = 0 is 1
  const auto u1 = oracle::synthesize(tg.u0[0], 16);
  EXPECT_NEAR(u1[(4 * 16 + 0) * 16 + 0], 1.0, 1e-14);
  InitialParams p;
  p.seed = 99;
  const InitialData r1 = make_initial("random-band", p, g);
  const InitialData r2 = make_initial("random-band", p, g);
  EXPECT_TRUE(r1.u0 == r2.u0);
  EXPECT_TRUE(r1.theta0 == r2.theta0);
  EXPECT_LE(max_divergence(r1.u0), 1e-14);
  EXPECT_NEAR(sobolev_norm(r1.u0, 0.0), p.amplitude, 1e-14);
  for (const WaveIndex& k : g->lattice()) {
    if (k.norm_sq() > 16) {
      EXPECT_EQ(r1.u0[0].at(k), Complex{});
    }
  }
  const InitialData z = make_initial("zero", p, g);
  EXPECT_EQ(sobolev_norm(z.u0, 0.0), 0.0);
  EXPECT_EQ(sobolev_norm(z.theta0, 0.0), 0.0);
  EXPECT_THROW(make_initial("vortex", p, g), ConfigError);
}

}  // namespace
}  // namespace admb
