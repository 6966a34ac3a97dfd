#include "admb/filter.hpp"

#include <cmath>
#include <string>

#include "admb/errors.hpp"

namespace admb {

namespace {

void check_params(double alpha, int order) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be a finite non-negative number");
  }
  if (order < 0) throw ConfigError("deconvolution order must be >= 0, got " + std::to_string(order));
}

void check_grid(const DeconvolutionSpec& spec, const TorusGrid& g) {
  require_same_grid(spec.grid(), g);
}

}  // namespace

double deconv_symbol(double alpha, int order, double k_sq) {
  check_params(alpha, order);
  const double a = alpha * alpha * k_sq;
  if (a == 0.0 || order == 0) return 1.0;
  // log r = -log(1 + 1/a)
  return (1.0 + a) * -std::expm1(-(order + 1) * std::log1p(1.0 / a));
}

double deconv_gap_symbol(double alpha, int order, double k_sq) {
  check_params(alpha, order);
  const double a = alpha * alpha * k_sq;
  if (a == 0.0) return 0.0;
  return (1.0 + a) * std::exp(-(order + 1) * std::log1p(1.0 / a));
}

DeconvolutionSpec::DeconvolutionSpec(GridPtr grid, double alpha, int order)
    : grid_(std::move(grid)), alpha_(alpha), order_(order) {
  check_params(alpha, order);
  const std::size_t n = grid_->spectral_size();
  auto sym = std::make_shared<Symbols>();
  sym->filter.assign(n, 1.0);
  sym->helmholtz.assign(n, 1.0);
  sym->attenuation.assign(n, 1.0);
  sym->deconv.assign(n, 1.0);
  sym->gap.assign(n, 0.0);
  sym->half_power.assign(n, 1.0);
  for (std::size_t s = 0; s < n; ++s) {
    const double k2 = grid_->k_sq(s);
    const double a = alpha * alpha * k2;
    const double d = deconv_symbol(alpha, order, k2);
    sym->helmholtz[s] = 1.0 + a;
    sym->filter[s] = 1.0 / (1.0 + a);
    sym->deconv[s] = d;
    sym->attenuation[s] = d / (1.0 + a);
    sym->gap[s] = deconv_gap_symbol(alpha, order, k2);
    sym->half_power[s] = std::sqrt((1.0 + a) * d);
  }
  symbols_ = std::move(sym);
}

ScalarField apply_symbol(const std::vector<double>& symbol, const ScalarField& f) {
  const TorusGrid& g = f.grid();
  ScalarField out(f.grid_ptr());
  for (std::size_t s : g.retained_slots()) out[s] = symbol[s] * f[s];
  return out;
}

VectorField apply_symbol(const std::vector<double>& symbol, const VectorField& v) {
  return VectorField(apply_symbol(symbol, v[0]), apply_symbol(symbol, v[1]),
                     apply_symbol(symbol, v[2]));
}

ScalarField helmholtz_filter(const DeconvolutionSpec& spec, const ScalarField& f) {
  check_grid(spec, f.grid());
  return apply_symbol(spec.symbols().filter, f);
}

VectorField helmholtz_filter(const DeconvolutionSpec& spec, const VectorField& v) {
  check_grid(spec, v.grid());
  return apply_symbol(spec.symbols().filter, v);
}

ScalarField apply_A(const DeconvolutionSpec& spec, const ScalarField& f) {
  check_grid(spec, f.grid());
  return apply_symbol(spec.symbols().helmholtz, f);
}

VectorField apply_A(const DeconvolutionSpec& spec, const VectorField& v) {
  check_grid(spec, v.grid());
  return apply_symbol(spec.symbols().helmholtz, v);
}

ScalarField deconvolve(const DeconvolutionSpec& spec, const ScalarField& f) {
  check_grid(spec, f.grid());
  return apply_symbol(spec.symbols().deconv, f);
}

VectorField deconvolve(const DeconvolutionSpec& spec, const VectorField& v) {
  check_grid(spec, v.grid());
  return apply_symbol(spec.symbols().deconv, v);
}

ScalarField deconvolution_gap(const DeconvolutionSpec& spec, const ScalarField& f) {
  check_grid(spec, f.grid());
  return apply_symbol(spec.symbols().gap, f);
}

VectorField deconvolution_gap(const DeconvolutionSpec& spec, const VectorField& v) {
  check_grid(spec, v.grid());
  return apply_symbol(spec.symbols().gap, v);
}

ScalarField apply_half_powers(const DeconvolutionSpec& spec, const ScalarField& f) {
  check_grid(spec, f.grid());
  return apply_symbol(spec.symbols().half_power, f);
}

VectorField apply_half_powers(const DeconvolutionSpec& spec, const VectorField& v) {
  check_grid(spec, v.grid());
  return apply_symbol(spec.symbols().half_power, v);
}

}  // namespace admb
