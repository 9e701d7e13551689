#include "gld/disk_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gld {

DiskGrid make_disk_grid(int n_r, int n_theta) {
  if (n_r < 32) throw std::invalid_argument("make_disk_grid: n_r must be >= 32");
  if (n_theta < 8 || n_theta % 4 != 0) {
    throw std::invalid_argument("make_disk_grid: n_theta must be a positive multiple of 4");
  }
  DiskGrid g;
  g.n_r = n_r;
  g.n_theta = n_theta;
  g.h = 2.0 / (2.0 * n_r - 1.0);
  g.dtheta = 2.0 * std::numbers::pi / n_theta;
  g.radii.resize(n_r);
  for (int i = 0; i < n_r; ++i) g.radii[i] = (i + 0.5) * g.h;
  g.radii[n_r - 1] = 1.0;
  return g;
}

VectorField make_field(const DiskGrid& grid, const BoundaryData& boundary) {
  if (boundary.n_theta != grid.n_theta) {
    throw std::invalid_argument("make_field: boundary angular count mismatch");
  }
  if (boundary.n < 1) throw std::invalid_argument("make_field: target dimension < 1");
  VectorField f;
  f.grid = grid;
  f.n = boundary.n;
  f.boundary = boundary;
  f.values.assign(static_cast<std::size_t>(grid.n_r) * grid.n_theta * f.n, 0.0);
  pin_boundary(f);
  return f;
}

void pin_boundary(VectorField& field) {
  const int last = field.grid.n_r - 1;
  for (int j = 0; j < field.grid.n_theta; ++j) {
    double* dst = field.at(last, j);
    const double* src = field.boundary.at(j);
    for (int c = 0; c < field.n; ++c) dst[c] = src[c];
  }
}

double boundary_mismatch(const VectorField& field) {
  const int last = field.grid.n_r - 1;
  double worst = 0.0;
  for (int j = 0; j < field.grid.n_theta; ++j) {
    const double* a = field.at(last, j);
    const double* b = field.boundary.at(j);
    for (int c = 0; c < field.n; ++c) {
      worst = std::max(worst, std::abs(a[c] - b[c]));
    }
  }
  return worst;
}

}  // namespace gld
