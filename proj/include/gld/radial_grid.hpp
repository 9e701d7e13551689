#pragma once

#include <cmath>
#include <vector>

namespace gld {

// Cell-centered radial grid on (0, 1]: r_i = (i + 1/2) h with
// h = 2/(2n - 1), so r_0 = h/2 stays off the singular origin and the last
// node lands exactly on r = 1 where Dirichlet data is imposed.  Faces
// between nodes sit at i*h; the face at the axis has zero area weight,
// which encodes the regularity condition there.  dim_m is the base
// dimension entering the r^(m-1) volume weight.
struct RadialGrid {
  std::vector<double> nodes;
  int count = 0;
  int dim_m = 2;
  double h = 0.0;

  double face(int i) const { return i * h; }
  double face_weight(int i) const {
    return dim_m == 2 ? face(i) : std::pow(face(i), dim_m - 1);
  }
  double cell_weight(int i) const {
    return dim_m == 2 ? nodes[i] : std::pow(nodes[i], dim_m - 1);
  }
};

RadialGrid make_radial_grid(int count, int dim_m = 2);

}  // namespace gld
