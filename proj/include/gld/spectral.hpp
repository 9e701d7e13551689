#pragma once

#include <vector>

#include "gld/potential.hpp"
#include "gld/radial_bvp.hpp"
#include "gld/radial_grid.hpp"

namespace gld {

// Radial Schroedinger-type operator -Laplace - c(r) on the unit disk with
// zero Dirichlet data at r = 1, c(r) = W'(1 - profile^2)/eps^2.
struct LinearizedOperator {
  RadialGrid grid;
  std::vector<double> coeff;
  double epsilon = 0.0;
  int k = 0;
};

LinearizedOperator linearized_operator(const ScalarProfile& flat,
                                       const PotentialSpec& spec);
LinearizedOperator linearized_operator(const ProfilePair& pair,
                                       const PotentialSpec& spec);

struct SpectralResult {
  double lambda1 = 0.0;
  // Nonnegative first eigenfunction on the full grid (boundary node
  // included with value 0), unit discrete L2 norm over the disk.
  std::vector<double> eigenfunction;
};

// Smallest eigenvalue by inverse iteration with the fixed shift
// sigma = min(0, min(-c)) - 1, which keeps the shifted matrix strictly
// diagonally dominant.  The first eigenfunction of the disk operator is
// radial, so only the radial mode is discretized.
SpectralResult first_eigenvalue(const LinearizedOperator& op);

// Discrete value of int |grad phi|^2 - c phi^2 over the disk (2 pi r
// weighted quadrature, no 1/2 factor); phi lives on the full grid and must
// vanish at the boundary row.  Exactly consistent with first_eigenvalue:
// plugging in the eigenfunction returns lambda1.
double stability_form_gl(const std::vector<double>& phi,
                         const LinearizedOperator& op);

struct HardyCheck {
  double form_value = 0.0;           // F(v) = 1/2 int |grad v|^2 - c |v|^2
  double decomposition_value = 0.0;  // 1/2 sum_j int Phi^2 |grad(v_j/Phi)|^2
};

// Evaluates both sides of the Hardy decomposition identity on the annulus
// that excludes the first axis cell; faces with a nonpositive Phi endpoint
// (the Dirichlet boundary) are skipped in the ratio quadrature, where the
// continuum integrand vanishes quadratically anyway.  Phi must be positive
// at interior nodes and satisfy the linearized equation -Lap Phi = c Phi
// to 1e-6 on op's discretization.
HardyCheck hardy_decomposition_check(const std::vector<double>& Phi,
                                     const std::vector<std::vector<double>>& v,
                                     const LinearizedOperator& op);

// (m-2)^2/4 - (m-1): sign decides equator-map stability.
double hardy_margin(int m);

// Second-variation quadratic form at the equator profile in dimension m:
// |S^{m-1}| int (phi'^2 - W'(1-h^2)/eps^2 phi^2) r^{m-1} dr.
double equator_stability_form(int m, const ScalarProfile& h_profile,
                              const std::vector<double>& phi,
                              const PotentialSpec& spec);

// eps_0 = sqrt(|W'(1)| / lambda1(domain)); the energy is strictly convex
// for eps >= eps_0.
double convexity_threshold(const PotentialSpec& spec, double lambda1_domain);

// Surface measure of the unit (m-1)-sphere.
double sphere_area(int m);

}  // namespace gld
