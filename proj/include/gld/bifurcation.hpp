#pragma once

#include <vector>

#include "gld/potential.hpp"
#include "gld/radial_bvp.hpp"
#include "gld/spectral.hpp"

namespace gld {

struct BifurcationPoint {
  int k = 0;
  double epsilon_k = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double lambda_residual = 0.0;  // lambda_1 at the reported midpoint
  double lambda_lo = 0.0;        // bracket endpoint values, lo < 0 < hi
  double lambda_hi = 0.0;
};

// lambda_1 of the flat-branch linearization at (epsilon, k).
double flat_branch_lambda1(double epsilon, int k, const PotentialSpec& spec,
                           const RadialGrid& grid);

// Bisection on the sign of lambda_{1,k}(epsilon).  The initial bracket
// doubles upward from 0.5 and halves downward to 1e-4; past those bounds
// NoSignChangeError is thrown.  k is mapped to |k| so find_epsilon_k(k)
// and find_epsilon_k(-k) agree bit for bit.  warm_lo, when positive, is
// tried as the lower bracket endpoint first (sweep continuation).
BifurcationPoint find_epsilon_k(int k, const PotentialSpec& spec,
                                const RadialGrid& grid, double tol,
                                double warm_lo = 0.0);

// eps_1 < eps_2 < ... < eps_kmax, warm-starting each bracket at the
// previous threshold.
std::vector<BifurcationPoint> sweep(int k_max, const PotentialSpec& spec,
                                    const RadialGrid& grid, double tol);

struct OrderingReport {
  int k = 0;
  int k_ref = 0;
  double min_gap = 0.0;           // min over interior nodes of f_ref - f_k
  std::vector<int> violations;    // nodes where the ordering is broken
  bool ok = false;
};

// Pointwise comparison of the flat branches at windings k and k-1 (or any
// reference winding): 0 < f_k < f_ref < 1 away from the boundary.
OrderingReport flat_ordering_check(double epsilon, int k,
                                   const PotentialSpec& spec,
                                   const RadialGrid& grid);
OrderingReport flat_ordering_check(double epsilon, int k, int k_ref,
                                   const PotentialSpec& spec,
                                   const RadialGrid& grid);

}  // namespace gld
