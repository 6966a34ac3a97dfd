#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace admb {

/// Integer wavenumber triple (k1, k2, k3) before scaling by 2*pi/L.
struct WaveIndex {
  int k1 = 0;
  int k2 = 0;
  int k3 = 0;

  [[nodiscard]] int norm_sq() const { return k1 * k1 + k2 * k2 + k3 * k3; }
  friend bool operator==(const WaveIndex&, const WaveIndex&) = default;
};

class TorusGrid;
using GridPtr = std::shared_ptr<const TorusGrid>;

/// Periodic cube ]0, L[^3 sampled on n^3 points, with its wavenumber lattice.
///
/// Coefficients are stored in the half-spectrum layout used by real-to-complex
/// FFTs: slot (i1, i2, k3) with i1, i2 in [0, n) and k3 in [0, n/2]. The logical
/// model is the full symmetric lattice; the k3 = 0 plane holds both members of
/// each conjugate pair, every other stored slot stands for itself and its
/// mirror (weight 2 in inner products).
///
/// A mode is retained iff 0 < |k|^2 <= m^2 (integer units) where m is the
/// truncation radius, at most n/2 - 1. The retained set is therefore a ball,
/// symmetric under k -> -k, and excludes the Nyquist planes.
class TorusGrid {
 public:
  static GridPtr create(double box_length, int modes_per_axis,
                        std::optional<int> truncation_radius = std::nullopt);

  [[nodiscard]] double box_length() const { return box_length_; }
  [[nodiscard]] int modes_per_axis() const { return n_; }
  [[nodiscard]] int max_index() const { return n_ / 2 - 1; }
  [[nodiscard]] int truncation_radius() const { return radius_; }
  /// 2*pi / L.
  [[nodiscard]] double scale() const { return scale_; }
  [[nodiscard]] double spacing() const { return box_length_ / n_; }

  [[nodiscard]] int half_extent() const { return n_ / 2 + 1; }
  [[nodiscard]] std::size_t spectral_size() const { return spectral_size_; }
  [[nodiscard]] std::size_t physical_size() const {
    return static_cast<std::size_t>(n_) * n_ * n_;
  }

  /// Storage slot of a wavenumber with k3 >= 0 and every |k_i| <= n/2.
  [[nodiscard]] std::size_t slot(int k1, int k2, int k3) const;
  [[nodiscard]] std::size_t slot(const WaveIndex& k) const {
    return slot(k.k1, k.k2, k.k3);
  }
  [[nodiscard]] WaveIndex index(std::size_t slot) const { return index_[slot]; }

  [[nodiscard]] bool retained(std::size_t slot) const { return weight_[slot] > 0.0; }
  /// True iff the logical mode k (any sign of k3) is retained.
  [[nodiscard]] bool retained(const WaveIndex& k) const;
  /// Multiplicity of the slot in the full lattice: 0 (dropped), 1 or 2.
  [[nodiscard]] double weight(std::size_t slot) const { return weight_[slot]; }
  /// Scaled |k|^2.
  [[nodiscard]] double k_sq(std::size_t slot) const { return k_sq_[slot]; }
  /// Scaled wave vector.
  [[nodiscard]] std::array<double, 3> wavevector(std::size_t slot) const;

  [[nodiscard]] std::span<const std::size_t> retained_slots() const { return retained_; }
  /// Every retained logical mode, both members of each pair, sorted
  /// lexicographically by (k1, k2, k3).
  [[nodiscard]] std::vector<WaveIndex> lattice() const;

  /// Value equality: same box, resolution and truncation.
  [[nodiscard]] bool same_as(const TorusGrid& other) const;

 private:
  TorusGrid(double box_length, int n, int radius);

  double box_length_;
  int n_;
  int radius_;
  double scale_;
  std::size_t spectral_size_;
  std::vector<WaveIndex> index_;
  std::vector<double> weight_;
  std::vector<double> k_sq_;
  std::vector<std::size_t> retained_;
};

/// Builds the default grid for a cube of side `box_length` with the widest
/// ball-shaped truncation that fits.
GridPtr build_grid(double box_length, int modes_per_axis);

}  // namespace admb
