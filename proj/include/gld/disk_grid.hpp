#pragma once

#include <string>
#include <vector>

namespace gld {

// Polar grid on the unit disk.  Radial layout matches RadialGrid: cell
// centers r_i = (i + 1/2) h with h = 2/(2 n_r - 1); the outermost ring
// sits exactly on r = 1 and is pinned to the boundary data.  Angles are
// theta_j = 2 pi j / n_theta.
struct DiskGrid {
  int n_r = 0;
  int n_theta = 0;
  double h = 0.0;
  double dtheta = 0.0;
  std::vector<double> radii;

  double face(int i) const { return i * h; }
  double theta(int j) const { return j * dtheta; }
  // Cell thickness: full h for interior rings, h/2 for the boundary ring.
  double ring_width(int i) const { return i + 1 < n_r ? h : 0.5 * h; }
  double cell_area(int i) const { return radii[i] * ring_width(i) * dtheta; }
};

DiskGrid make_disk_grid(int n_r, int n_theta);

enum class BoundaryKind { DegreeK, Horizontal, Custom };

// Dirichlet data on the outer ring, one R^n vector per angular node.
struct BoundaryData {
  int n_theta = 0;
  int n = 0;
  std::vector<double> values;  // [n_theta][n]
  BoundaryKind kind = BoundaryKind::Custom;
  double param = 0.0;  // winding k (DegreeK) or wavenumber a (Horizontal)

  double* at(int j) { return values.data() + static_cast<std::size_t>(j) * n; }
  const double* at(int j) const {
    return values.data() + static_cast<std::size_t>(j) * n;
  }
};

// R^n-valued field on the disk grid; the outer ring duplicates the
// boundary data exactly and is never updated by descent.
struct VectorField {
  DiskGrid grid;
  int n = 0;
  std::vector<double> values;  // [n_r][n_theta][n]
  BoundaryData boundary;

  std::size_t index(int i, int j) const {
    return (static_cast<std::size_t>(i) * grid.n_theta + j) * n;
  }
  double* at(int i, int j) { return values.data() + index(i, j); }
  const double* at(int i, int j) const { return values.data() + index(i, j); }
};

// Field with the given boundary pinned on the outer ring and zero interior.
VectorField make_field(const DiskGrid& grid, const BoundaryData& boundary);

// Copies the boundary data onto the outer ring.
void pin_boundary(VectorField& field);

// Max over nodes of | |u| - limit |; diagnostic for the pinned-ring invariant.
double boundary_mismatch(const VectorField& field);

}  // namespace gld
