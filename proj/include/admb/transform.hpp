#pragma once

#include <span>
#include <vector>

#include "admb/field.hpp"

namespace admb {

/// Real samples on an m^3 grid of the torus, x-major:
/// sample (i, j, l) sits at ((i * m) + j) * m + l and position (i, j, l) * L / m.
struct PhysicalField {
  int points_per_axis = 0;
  std::vector<double> values;
};

/// Side of the padded grid used for quadratic products (3/2 rule). With the
/// retained ball inside |k_i| <= n/2 - 1 this makes products alias-free.
int dealiased_size(const TorusGrid& grid);

/// v(x) = sum_k v_k exp(i k.x) evaluated on the grid's own n^3 points.
PhysicalField to_physical(const ScalarField& f);
/// v_k = mean over samples of v(x) exp(-i k.x), truncated to the retained set.
ScalarField from_physical(const GridPtr& grid, const PhysicalField& samples);

/// Same pair on an m^3 grid, m >= n (zero padding / truncation).
PhysicalField to_physical(const ScalarField& f, int points_per_axis);

}  // namespace admb
