#include "admb/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

namespace admb {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

VectorField gradient(const ScalarField& f) {
  const TorusGrid& g = f.grid();
  VectorField out(f.grid_ptr());
  for (std::size_t s : g.retained_slots()) {
    const auto k = g.wavevector(s);
    const Complex ikf = kI * f[s];
    for (int j = 0; j < 3; ++j) out[j][s] = k[static_cast<std::size_t>(j)] * ikf;
  }
  return out;
}

ScalarField divergence(const VectorField& v) {
  const TorusGrid& g = v.grid();
  ScalarField out(v.grid_ptr());
  for (std::size_t s : g.retained_slots()) {
    const auto k = g.wavevector(s);
    out[s] = kI * (k[0] * v[0][s] + k[1] * v[1][s] + k[2] * v[2][s]);
  }
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  const TorusGrid& g = f.grid();
  ScalarField out(f.grid_ptr());
  for (std::size_t s : g.retained_slots()) out[s] = -g.k_sq(s) * f[s];
  return out;
}

VectorField laplacian(const VectorField& v) {
  return VectorField(laplacian(v[0]), laplacian(v[1]), laplacian(v[2]));
}

VectorField leray_project(const VectorField& v) {
  const TorusGrid& g = v.grid();
  VectorField out(v.grid_ptr());
  for (std::size_t s : g.retained_slots()) {
    const auto k = g.wavevector(s);
    const Complex kv = k[0] * v[0][s] + k[1] * v[1][s] + k[2] * v[2][s];
    const Complex c = kv / g.k_sq(s);
    for (int j = 0; j < 3; ++j) out[j][s] = v[j][s] - k[static_cast<std::size_t>(j)] * c;
  }
  return out;
}

ScalarField truncate(const ScalarField& f, int cutoff) {
  const TorusGrid& g = f.grid();
  ScalarField out(f.grid_ptr());
  const int c2 = std::max(cutoff, 0) * std::max(cutoff, 0);
  for (std::size_t s : g.retained_slots()) {
    if (g.index(s).norm_sq() <= c2) out[s] = f[s];
  }
  return out;
}

VectorField truncate(const VectorField& v, int cutoff) {
  return VectorField(truncate(v[0], cutoff), truncate(v[1], cutoff), truncate(v[2], cutoff));
}

double inner(const ScalarField& f, const ScalarField& h) {
  require_same_grid(f.grid(), h.grid());
  const TorusGrid& g = f.grid();
  double sum = 0.0;
  for (std::size_t s : g.retained_slots()) {
    sum += g.weight(s) * (f[s].real() * h[s].real() + f[s].imag() * h[s].imag());
  }
  return sum;
}

double inner(const VectorField& f, const VectorField& h) {
  return inner(f[0], h[0]) + inner(f[1], h[1]) + inner(f[2], h[2]);
}

double sobolev_norm(const ScalarField& f, double s_exp) {
  const TorusGrid& g = f.grid();
  double sum = 0.0;
  for (std::size_t s : g.retained_slots()) {
    const double w = s_exp == 0.0 ? 1.0 : std::pow(g.k_sq(s), s_exp);
    sum += g.weight(s) * w * std::norm(f[s]);
  }
  return std::sqrt(sum);
}

double sobolev_norm(const VectorField& v, double s_exp) {
  const double a = sobolev_norm(v[0], s_exp);
  const double b = sobolev_norm(v[1], s_exp);
  const double c = sobolev_norm(v[2], s_exp);
  return std::sqrt(a * a + b * b + c * c);
}

double max_divergence(const VectorField& v) {
  const TorusGrid& g = v.grid();
  double worst = 0.0;
  for (std::size_t s : g.retained_slots()) {
    const auto k = g.wavevector(s);
    worst = std::max(worst, std::abs(k[0] * v[0][s] + k[1] * v[1][s] + k[2] * v[2][s]));
  }
  return worst;
}

}  // namespace admb
