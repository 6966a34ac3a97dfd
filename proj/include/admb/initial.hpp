#pragma once

#include <cstdint>
#include <string>

#include "admb/field.hpp"

namespace admb {

struct InitialParams {
  /// L2 norm of u0 for random-band; peak velocity for taylor-green.
  double amplitude = 1.0;
  /// Same for theta0.
  double theta_amplitude = 1.0;
  /// Band limits (integer |k|) for random-band.
  double k_min = 1.0;
  double k_max = 4.0;
  std::uint64_t seed = 1;
};

struct InitialData {
  VectorField u0;
  ScalarField theta0;
};

/// Presets:
///   "taylor-green"  u0 = a (sin x cos y, -cos x sin y, 0), theta0 = b sin x
///                   (coordinates scaled by 2*pi/L)
///   "random-band"   seeded Gaussian coefficients on k_min <= |k| <= k_max,
///                   Leray projected, normalized to the requested L2 norms
///   "zero"
InitialData make_initial(const std::string& name, const InitialParams& params,
                         const GridPtr& grid);

/// Seeded random Hermitian field on k_min <= |k| <= k_max (integer units),
/// unit L2 norm unless the band is empty.
ScalarField random_band_scalar(const GridPtr& grid, std::uint64_t seed, double k_min,
                               double k_max);
/// Divergence-free counterpart (Leray projection of three random components).
VectorField random_band_vector(const GridPtr& grid, std::uint64_t seed, double k_min,
                               double k_max);

}  // namespace admb
