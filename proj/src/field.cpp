#include "admb/field.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "admb/errors.hpp"

namespace admb {

ScalarField::ScalarField(GridPtr grid)
    : grid_(std::move(grid)), coeffs_(grid_->spectral_size(), Complex{}) {}

Complex ScalarField::at(const WaveIndex& k) const {
  if (!grid_->retained(k)) return {};
  if (k.k3 >= 0) return coeffs_[grid_->slot(k)];
  return std::conj(coeffs_[grid_->slot(-k.k1, -k.k2, -k.k3)]);
}

void ScalarField::set(const WaveIndex& k, Complex value) {
  if (!grid_->retained(k)) {
    throw ConfigError("mode (" + std::to_string(k.k1) + "," + std::to_string(k.k2) + "," +
                      std::to_string(k.k3) + ") is not retained on this grid");
  }
  if (k.k3 > 0) {
    coeffs_[grid_->slot(k)] = value;
  } else if (k.k3 < 0) {
    coeffs_[grid_->slot(-k.k1, -k.k2, -k.k3)] = std::conj(value);
  } else {
    coeffs_[grid_->slot(k)] = value;
    coeffs_[grid_->slot(-k.k1, -k.k2, 0)] = std::conj(value);
  }
}

void ScalarField::clean() {
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    if (!grid_->retained(s)) coeffs_[s] = Complex{};
  }
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(*grid_, *other.grid_);
  for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] += other.coeffs_[s];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(*grid_, *other.grid_);
  for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] -= other.coeffs_[s];
  return *this;
}

ScalarField& ScalarField::operator*=(double factor) {
  for (auto& c : coeffs_) c *= factor;
  return *this;
}

ScalarField& ScalarField::add_scaled(double factor, const ScalarField& other) {
  require_same_grid(*grid_, *other.grid_);
  for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] += factor * other.coeffs_[s];
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double factor, ScalarField a) { return a *= factor; }

VectorField::VectorField(GridPtr grid)
    : comp_{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

VectorField::VectorField(ScalarField c1, ScalarField c2, ScalarField c3)
    : comp_{std::move(c1), std::move(c2), std::move(c3)} {
  require_same_grid(comp_[0].grid(), comp_[1].grid());
  require_same_grid(comp_[0].grid(), comp_[2].grid());
}

void VectorField::clean() {
  for (auto& c : comp_) c.clean();
}

VectorField& VectorField::operator+=(const VectorField& other) {
  for (int i = 0; i < 3; ++i) (*this)[i] += other[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  for (int i = 0; i < 3; ++i) (*this)[i] -= other[i];
  return *this;
}

VectorField& VectorField::operator*=(double factor) {
  for (auto& c : comp_) c *= factor;
  return *this;
}

VectorField& VectorField::add_scaled(double factor, const VectorField& other) {
  for (int i = 0; i < 3; ++i) (*this)[i].add_scaled(factor, other[i]);
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double factor, VectorField a) { return a *= factor; }

void require_same_grid(const TorusGrid& a, const TorusGrid& b) {
  if (!a.same_as(b)) throw GridMismatch();
}

double hermitian_defect(const ScalarField& f) {
  const TorusGrid& g = f.grid();
  const int n = g.modes_per_axis();
  double worst = 0.0;
  for (int k1 = -n / 2 + 1; k1 < n / 2; ++k1) {
    for (int k2 = -n / 2 + 1; k2 < n / 2; ++k2) {
      const Complex a = f[g.slot(k1, k2, 0)];
      const Complex b = f[g.slot(-k1, -k2, 0)];
      worst = std::max(worst, std::abs(a - std::conj(b)));
    }
  }
  return worst;
}

void enforce_hermitian(ScalarField& f) {
  const TorusGrid& g = f.grid();
  const int n = g.modes_per_axis();
  for (int k1 = -n / 2 + 1; k1 < n / 2; ++k1) {
    for (int k2 = -n / 2 + 1; k2 < n / 2; ++k2) {
      const std::size_t s = g.slot(k1, k2, 0);
      const std::size_t t = g.slot(-k1, -k2, 0);
      if (t < s) continue;
      const Complex avg = 0.5 * (f[s] + std::conj(f[t]));
      f[s] = avg;
      f[t] = std::conj(avg);
    }
  }
  f.clean();
}

}  // namespace admb
