#pragma once

#include <memory>
#include <vector>

#include "admb/field.hpp"

namespace admb {

/// Closed-form Van Cittert symbol
///   D_N(k) = sum_{n=0}^{N} r^n = (1 + a) (1 - r^{N+1}),  a = alpha^2 |k|^2,  r = a / (1 + a).
double deconv_symbol(double alpha, int order, double k_sq);

/// Symbol of A - D_N, i.e. (1 + a) r^{N+1}. Evaluated directly so that it stays
/// accurate long after D_N and A agree to machine precision.
double deconv_gap_symbol(double alpha, int order, double k_sq);

/// Helmholtz filter G = (I - alpha^2 Lap)^{-1}, its inverse A, and the order-N
/// deconvolution D_N, all tabulated per storage slot of one grid.
class DeconvolutionSpec {
 public:
  /// alpha >= 0 (alpha = 0 makes every operator the identity), order >= 0.
  DeconvolutionSpec(GridPtr grid, double alpha, int order);

  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] const TorusGrid& grid() const { return *grid_; }
  [[nodiscard]] const GridPtr& grid_ptr() const { return grid_; }

  struct Symbols {
    std::vector<double> filter;      // G
    std::vector<double> helmholtz;   // A = 1 + alpha^2 |k|^2
    std::vector<double> attenuation; // rho_{N,k} = 1 - r^{N+1}
    std::vector<double> deconv;      // D_N
    std::vector<double> gap;         // A - D_N
    std::vector<double> half_power;  // sqrt(A D_N)
  };
  [[nodiscard]] const Symbols& symbols() const { return *symbols_; }

 private:
  GridPtr grid_;
  double alpha_;
  int order_;
  std::shared_ptr<const Symbols> symbols_;
};

/// Multiplies every retained coefficient by symbol[slot].
ScalarField apply_symbol(const std::vector<double>& symbol, const ScalarField& f);
VectorField apply_symbol(const std::vector<double>& symbol, const VectorField& v);

ScalarField helmholtz_filter(const DeconvolutionSpec& spec, const ScalarField& f);
VectorField helmholtz_filter(const DeconvolutionSpec& spec, const VectorField& v);

ScalarField apply_A(const DeconvolutionSpec& spec, const ScalarField& f);
VectorField apply_A(const DeconvolutionSpec& spec, const VectorField& v);

ScalarField deconvolve(const DeconvolutionSpec& spec, const ScalarField& f);
VectorField deconvolve(const DeconvolutionSpec& spec, const VectorField& v);

/// (A - D_N) f
ScalarField deconvolution_gap(const DeconvolutionSpec& spec, const ScalarField& f);
VectorField deconvolution_gap(const DeconvolutionSpec& spec, const VectorField& v);

/// A^{1/2} D_N^{1/2} f, the operator whose norm is the conserved energy.
ScalarField apply_half_powers(const DeconvolutionSpec& spec, const ScalarField& f);
VectorField apply_half_powers(const DeconvolutionSpec& spec, const VectorField& v);

}  // namespace admb
