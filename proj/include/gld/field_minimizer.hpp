#pragma once

#include <cstdint>
#include <vector>

#include "gld/disk_grid.hpp"
#include "gld/field_kernels.hpp"
#include "gld/potential.hpp"
#include "gld/radial_bvp.hpp"

namespace gld {

// u_bd(cos phi, sin phi) = (cos k phi, sin k phi, 0, ..., 0) in R^n.
BoundaryData boundary_degree_k(int k, int n, const DiskGrid& grid);

// u_a(x1, x2) = (cos(a x1), sin(a x1), 0, ..., 0) restricted to the circle.
BoundaryData boundary_horizontal(double a, int n, const DiskGrid& grid);

// Winding number of the first two components around the origin, by
// discrete angle summation along the boundary polyline.
int winding_number(const BoundaryData& bd);

// Energy of the field; requires max |u|^2 <= 1 + 1e-12 (W's domain guard).
EnergyBreakdown gl_energy(const VectorField& field, double epsilon,
                          const PotentialSpec& spec);

struct DescentOptions {
  double tol = 1e-8;       // max-norm of the pointwise energy gradient
  int max_iters = 200000;
  bool verbose = false;
};

struct DescentStats {
  int iterations = 0;
  double final_grad_norm = 0.0;
  double energy = 0.0;
  int backtracks = 0;
};

// Barzilai-Borwein descent with Armijo fallback on the diagonally
// preconditioned energy gradient; steps that would push |u| past 1 are
// shortened instead of extending W beyond its domain.  Energy never
// increases between iterates.  Boundary ring stays pinned.
VectorField gl_descent(const VectorField& init, double epsilon,
                       const PotentialSpec& spec,
                       const DescentOptions& opts = {},
                       DescentStats* stats = nullptr);

// max over nodes of |u . e|, e_index in 1..n.
double escape_metric(const VectorField& field, int e_index);

// Keeps the first dim_V components, zeroes components dim_V+1..n-1, and
// stores the euclidean norm of the dropped tail in the last slot.  Never
// increases the energy.
VectorField vertical_transform(const VectorField& field, int dim_V);

// Negates component e_index everywhere (boundary included).
VectorField reflect(const VectorField& field, int e_index);

// Fraction of the discrete Dirichlet energy carried by angular mode k in
// components 1-2 (signed, via the complex signal u1 + i u2) and mode 0 in
// component 3.  Requires n = 3.  Returns 1 for a field with no Dirichlet
// energy.
double mode_purity(const VectorField& field, int k);

enum class Dichotomy { StrictlyPositive, IdenticallyZero, Mixed };

// min/max of |u . e| over interior nodes against the h^2 scale.
Dichotomy dichotomy_check(const VectorField& field, int e_index);

// Flips u . e so the axis-cell mean of the e-component is >= 0 (minimisers
// come in +- pairs).
void sign_normalize(VectorField& field, int e_index);

// Samples the symmetric ansatz f(r)(cos k phi, sin k phi, 0) + g(r) e3 on
// the disk grid; requires matching radial resolution.
VectorField lift_profile_pair(const ProfilePair& pair, const DiskGrid& grid);

// Deterministic random interior with |u| <= scale at every node, boundary
// pinned; used for competitor and uniqueness experiments.
VectorField random_ball_field(const DiskGrid& grid, const BoundaryData& bd,
                              std::uint64_t seed, double scale);

// Horizontal map u_a sampled over the whole disk.
VectorField horizontal_field(double a, int n, const DiskGrid& grid);

// Mean of u over the innermost ring: the well-defined pole value.
std::vector<double> axis_value(const VectorField& field);

}  // namespace gld
