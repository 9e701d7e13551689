#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gld/potential.hpp"
#include "gld/radial_grid.hpp"

namespace gld {

// Escaping profile pair (f, g) at a given epsilon and winding number k:
// u = f(r)(cos k phi, sin k phi, 0) + g(r) e3.
struct ProfilePair {
  RadialGrid grid;
  std::vector<double> f;
  std::vector<double> g;
  double epsilon = 0.0;
  int k = 0;
};

enum class ProfileKind { FlatBranch, Equator };

// Single radial profile: the flat branch (g == 0 solution at winding k, on
// the disk) or the equator profile in dimension m.
struct ScalarProfile {
  RadialGrid grid;
  std::vector<double> vals;
  double epsilon = 0.0;
  int k_or_m = 0;
  ProfileKind kind = ProfileKind::FlatBranch;
};

// Value (not an error): above the bifurcation threshold the escaping
// solution does not exist and Newton lands on the flat branch.
struct NoEscapingSolution {
  double epsilon = 0.0;
  int k = 0;
  double max_abs_g = 0.0;
  bool converged_to_flat = false;  // false: retry schedule exhausted
};

struct NewtonStats {
  int iterations = 0;
  int attempts = 0;
  double final_residual = 0.0;
};

struct NewtonOptions {
  double tol = 1e-10;
  int max_iters = 60;
};

using PairOutcome = std::variant<ProfilePair, NoEscapingSolution>;

// Damped-Newton solve of the coupled pair system on the unit disk
// (grid.dim_m must be 2).  Default seed is the escaping one
// f = r^|k|, g = cos(pi r / 2); the retry schedule perturbs g by
// +0.1 sin(pi r) before giving up.  With the default seed a failed or
// flat-converged run reports NoEscapingSolution; with a caller-provided
// init a failed run throws NewtonDivergedError instead.
PairOutcome solve_pair(double epsilon, int k, const PotentialSpec& spec,
                       const RadialGrid& grid,
                       const ProfilePair* init = nullptr,
                       NewtonStats* stats = nullptr,
                       const NewtonOptions& opts = {});

// Flat branch at winding k (unique for every epsilon; grid.dim_m == 2).
ScalarProfile solve_flat(double epsilon, int k, const PotentialSpec& spec,
                         const RadialGrid& grid, NewtonStats* stats = nullptr,
                         const NewtonOptions& opts = {});

// Increasing equator profile in dimension m >= 2 (grid.dim_m == m).
ScalarProfile solve_equator(double epsilon, int m, const PotentialSpec& spec,
                            const RadialGrid& grid,
                            NewtonStats* stats = nullptr,
                            const NewtonOptions& opts = {});

// Max-norm of the discrete ODE residual, boundary rows included.
double residual_norm(const ProfilePair& pair, const PotentialSpec& spec);
double residual_norm(const ScalarProfile& profile, const PotentialSpec& spec);

// Small-epsilon limit of the escaping pair:
// f = 2 r^|k| / (1 + r^2|k|), g = (1 - r^2|k|) / (1 + r^2|k|).
ProfilePair limit_profile(int k, const RadialGrid& grid);

// Energy of the symmetric ansatz: 2 pi int [ (f'^2 + g'^2)/2
// + k^2 f^2 / (2 r^2) + W(1 - f^2 - g^2)/(2 eps^2) ] r dr on the grid's
// face/cell quadrature.  Split into Dirichlet and potential parts.
struct RadialEnergy {
  double dirichlet = 0.0;
  double potential = 0.0;
  double total() const { return dirichlet + potential; }
};
RadialEnergy pair_energy(const ProfilePair& pair, const PotentialSpec& spec);

}  // namespace gld
