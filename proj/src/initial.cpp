#include "admb/initial.hpp"

#include <array>
#include <cmath>
#include <random>

#include "admb/errors.hpp"
#include "admb/spectral_ops.hpp"

namespace admb {

namespace {

/// Canonical member of the pair {k, -k}.
bool is_representative(const WaveIndex& k) {
  if (k.k3 != 0) return k.k3 > 0;
  if (k.k2 != 0) return k.k2 > 0;
  return k.k1 > 0;
}

void normalize(ScalarField& f, double target) {
  const double n = sobolev_norm(f, 0.0);
  if (n > 0.0) f *= target / n;
}

void normalize(VectorField& v, double target) {
  const double n = sobolev_norm(v, 0.0);
  if (n > 0.0) v *= target / n;
}

}  // namespace

ScalarField random_band_scalar(const GridPtr& grid, std::uint64_t seed, double k_min,
                               double k_max) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ScalarField f(grid);
  for (const WaveIndex& k : grid->lattice()) {
    if (!is_representative(k)) continue;
    const double re = normal(rng);
    const double im = normal(rng);
    const double mag = std::sqrt(static_cast<double>(k.norm_sq()));
    if (mag < k_min || mag > k_max) continue;
    f.set(k, Complex(re, im));
  }
  normalize(f, 1.0);
  return f;
}

VectorField random_band_vector(const GridPtr& grid, std::uint64_t seed, double k_min,
                               double k_max) {
  std::seed_seq seq{seed, seed >> 32, std::uint64_t{0x9e3779b9}};
  std::array<std::uint64_t, 3> seeds{};
  seq.generate(seeds.begin(), seeds.end());
  VectorField v(random_band_scalar(grid, seeds[0], k_min, k_max),
                random_band_scalar(grid, seeds[1], k_min, k_max),
                random_band_scalar(grid, seeds[2], k_min, k_max));
  v = leray_project(v);
  normalize(v, 1.0);
  return v;
}

InitialData make_initial(const std::string& name, const InitialParams& p, const GridPtr& grid) {
  InitialData data{VectorField(grid), ScalarField(grid)};
  if (name == "zero") return data;
  if (name == "taylor-green") {
    // sin x cos y = (1/4i) sum over (+-1, +-1) with signs; set the four modes
    // of each component directly from the trigonometric expansion.
    const double a = p.amplitude;
    // u1 = a sin x cos y: coefficient of e^{i(x+y)} and e^{i(x-y)} is a/(4i)
    data.u0[0].set({1, 1, 0}, Complex(0.0, -a / 4.0));
    data.u0[0].set({1, -1, 0}, Complex(0.0, -a / 4.0));
    // u2 = -a cos x sin y: coefficient of e^{i(x+y)} is -a/(4i), of e^{i(-x+y)} is -a/(4i)
    data.u0[1].set({1, 1, 0}, Complex(0.0, a / 4.0));
    data.u0[1].set({-1, 1, 0}, Complex(0.0, a / 4.0));
    // theta0 = b sin x
    data.theta0.set({1, 0, 0}, Complex(0.0, -p.theta_amplitude / 2.0));
    return data;
  }
  if (name == "random-band") {
    if (!(p.k_min >= 0.0 && p.k_max >= p.k_min)) {
      throw ConfigError("random-band needs 0 <= k_min <= k_max");
    }
    data.u0 = random_band_vector(grid, p.seed, p.k_min, p.k_max);
    data.u0 *= p.amplitude;
    data.theta0 = random_band_scalar(grid, p.seed ^ 0x5bd1e995ULL, p.k_min, p.k_max);
    data.theta0 *= p.theta_amplitude;
    return data;
  }
  throw ConfigError("unknown initial-condition preset '" + name +
                    "' (expected taylor-green, random-band or zero)");
}

}  // namespace admb
