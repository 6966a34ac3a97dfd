#include "admb/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "admb/errors.hpp"

namespace admb {

namespace {

int wrap(int k, int n) { return k < 0 ? k + n : k; }
int unwrap(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace

TorusGrid::TorusGrid(double box_length, int n, int radius)
    : box_length_(box_length),
      n_(n),
      radius_(radius),
      scale_(2.0 * std::numbers::pi / box_length),
      spectral_size_(static_cast<std::size_t>(n) * n * (n / 2 + 1)) {
  index_.resize(spectral_size_);
  weight_.assign(spectral_size_, 0.0);
  k_sq_.assign(spectral_size_, 0.0);
  const int h = half_extent();
  const int r2 = radius_ * radius_;
  for (int i1 = 0; i1 < n_; ++i1) {
    for (int i2 = 0; i2 < n_; ++i2) {
      for (int k3 = 0; k3 < h; ++k3) {
        const std::size_t s = (static_cast<std::size_t>(i1) * n_ + i2) * h + k3;
        const WaveIndex k{unwrap(i1, n_), unwrap(i2, n_), k3};
        index_[s] = k;
        k_sq_[s] = scale_ * scale_ * k.norm_sq();
        const int m2 = k.norm_sq();
        if (m2 > 0 && m2 <= r2) {
          weight_[s] = k3 == 0 ? 1.0 : 2.0;
          retained_.push_back(s);
        }
      }
    }
  }
}

GridPtr TorusGrid::create(double box_length, int modes_per_axis,
                          std::optional<int> truncation_radius) {
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw ConfigError("box_length must be a positive finite number");
  }
  if (modes_per_axis < 4 || modes_per_axis % 2 != 0) {
    throw ConfigError("modes_per_axis must be even and >= 4, got " +
                      std::to_string(modes_per_axis));
  }
  const int widest = modes_per_axis / 2 - 1;
  const int radius = truncation_radius.value_or(widest);
  if (radius < 0 || radius > widest) {
    throw ConfigError("truncation_radius must lie in [0, " + std::to_string(widest) +
                      "], got " + std::to_string(radius));
  }
  return GridPtr(new TorusGrid(box_length, modes_per_axis, radius));
}

std::size_t TorusGrid::slot(int k1, int k2, int k3) const {
  return (static_cast<std::size_t>(wrap(k1, n_)) * n_ + wrap(k2, n_)) * half_extent() + k3;
}

bool TorusGrid::retained(const WaveIndex& k) const {
  const int m2 = k.norm_sq();
  return m2 > 0 && m2 <= radius_ * radius_;
}

std::array<double, 3> TorusGrid::wavevector(std::size_t s) const {
  const WaveIndex& k = index_[s];
  return {scale_ * k.k1, scale_ * k.k2, scale_ * k.k3};
}

std::vector<WaveIndex> TorusGrid::lattice() const {
  std::vector<WaveIndex> out;
  const int r = radius_;
  for (int k1 = -r; k1 <= r; ++k1) {
    for (int k2 = -r; k2 <= r; ++k2) {
      for (int k3 = -r; k3 <= r; ++k3) {
        const WaveIndex k{k1, k2, k3};
        if (retained(k)) out.push_back(k);
      }
    }
  }
  return out;
}

bool TorusGrid::same_as(const TorusGrid& other) const {
  return this == &other || (box_length_ == other.box_length_ && n_ == other.n_ &&
                            radius_ == other.radius_);
}

GridPtr build_grid(double box_length, int modes_per_axis) {
  return TorusGrid::create(box_length, modes_per_axis);
}

}  // namespace admb
