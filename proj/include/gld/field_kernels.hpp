#pragma once

#include <vector>

#include "gld/disk_grid.hpp"
#include "gld/potential.hpp"

namespace gld {

// Hot assembly loops for the 2D solvers.  Every kernel comes in a serial
// reference version and an OpenMP version; both accumulate per-ring
// partial sums and combine them in ring order, so the parallel results are
// bit-identical to the serial ones for any thread count.
enum class Exec { Serial, Parallel };

struct EnergyBreakdown {
  double dirichlet = 0.0;
  double potential = 0.0;
  double total() const { return dirichlet + potential; }
};

// Quadrature of int [ 1/2 |grad u|^2 + W(1-|u|^2)/(2 eps^2) ] over the
// disk: radial face terms, angular face terms on every ring, potential
// cell terms (boundary half-cells included).
EnergyBreakdown gl_energy_kernel(const VectorField& field, double epsilon,
                                 const PotentialSpec& spec,
                                 Exec exec = Exec::Parallel);

// Dirichlet part only (sphere-valued work drops the potential).
double dirichlet_energy_kernel(const VectorField& field,
                               Exec exec = Exec::Parallel);

// Pointwise L2 gradient of the discrete energy: the cell-area-normalized
// partial derivatives, i.e. the discrete -Lap u - u W'(1-|u|^2)/eps^2.
// Boundary-ring entries are zero.  With with_potential = false this is the
// gradient of the Dirichlet part alone.
void gl_gradient_kernel(const VectorField& field, double epsilon,
                        const PotentialSpec& spec, bool with_potential,
                        std::vector<double>& grad, Exec exec = Exec::Parallel);

// Max over nodes of |u|^2 (domain guard for W).
double max_sq_norm_kernel(const VectorField& field, Exec exec = Exec::Parallel);

// Max over nodes of the euclidean norm of an n-vector-per-node array.
double max_node_norm(const DiskGrid& grid, int n, const std::vector<double>& a,
                     Exec exec = Exec::Parallel);

// Weighted inner product sum_ij A_i x_ij . y_ij with optional extra
// per-ring weight.
double weighted_dot_kernel(const DiskGrid& grid, int n,
                           const std::vector<double>& x,
                           const std::vector<double>& y,
                           const std::vector<double>& ring_weight,
                           Exec exec = Exec::Parallel);

}  // namespace gld
