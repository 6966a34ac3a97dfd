#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "admb/grid.hpp"

namespace admb {

using Complex = std::complex<double>;

/// Fourier coefficients of a real, zero-mean periodic scalar field.
///
/// Hermitian symmetry is implicit for k3 != 0 (only k3 > 0 is stored) and is
/// maintained explicitly on the k3 = 0 plane. Slots outside the retained ball,
/// including k = 0, always hold zero.
class ScalarField {
 public:
  explicit ScalarField(GridPtr grid);

  [[nodiscard]] const TorusGrid& grid() const { return *grid_; }
  [[nodiscard]] const GridPtr& grid_ptr() const { return grid_; }

  [[nodiscard]] std::span<Complex> coeffs() { return coeffs_; }
  [[nodiscard]] std::span<const Complex> coeffs() const { return coeffs_; }
  Complex& operator[](std::size_t slot) { return coeffs_[slot]; }
  Complex operator[](std::size_t slot) const { return coeffs_[slot]; }

  /// Coefficient of the logical mode k (k3 may be negative). Zero for modes
  /// that are not retained.
  [[nodiscard]] Complex at(const WaveIndex& k) const;
  /// Sets the coefficient of k and, through Hermitian symmetry, of -k.
  void set(const WaveIndex& k, Complex value);

  /// Zeroes every slot that is not retained (mean, Nyquist, truncated modes).
  void clean();

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double factor);
  /// this += factor * other
  ScalarField& add_scaled(double factor, const ScalarField& other);

  friend bool operator==(const ScalarField& a, const ScalarField& b) {
    return a.grid_->same_as(*b.grid_) && a.coeffs_ == b.coeffs_;
  }

 private:
  GridPtr grid_;
  std::vector<Complex> coeffs_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double factor, ScalarField a);

/// Three scalar components on one shared grid.
class VectorField {
 public:
  explicit VectorField(GridPtr grid);
  VectorField(ScalarField c1, ScalarField c2, ScalarField c3);

  [[nodiscard]] const TorusGrid& grid() const { return comp_[0].grid(); }
  [[nodiscard]] const GridPtr& grid_ptr() const { return comp_[0].grid_ptr(); }

  ScalarField& operator[](int i) { return comp_[static_cast<std::size_t>(i)]; }
  const ScalarField& operator[](int i) const { return comp_[static_cast<std::size_t>(i)]; }

  void clean();

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double factor);
  VectorField& add_scaled(double factor, const VectorField& other);

  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.comp_ == b.comp_;
  }

 private:
  std::array<ScalarField, 3> comp_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double factor, VectorField a);

/// Throws GridMismatch unless both grids are equal by value.
void require_same_grid(const TorusGrid& a, const TorusGrid& b);

/// Largest |c(k) - conj(c(-k))| over the k3 = 0 plane; zero for a field that
/// represents a real function.
double hermitian_defect(const ScalarField& f);
/// Restores exact Hermitian symmetry on the k3 = 0 plane by averaging pairs.
void enforce_hermitian(ScalarField& f);

}  // namespace admb
