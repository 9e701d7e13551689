#include "gld/bifurcation.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "gld/errors.hpp"

namespace gld {

namespace {

constexpr double kEpsFloor = 1e-4;
constexpr double kEpsCeil = 1024.0;

}  // namespace

double flat_branch_lambda1(double epsilon, int k, const PotentialSpec& spec,
                           const RadialGrid& grid) {
  const ScalarProfile flat = solve_flat(epsilon, k, spec, grid);
  return first_eigenvalue(linearized_operator(flat, spec)).lambda1;
}

BifurcationPoint find_epsilon_k(int k, const PotentialSpec& spec,
                                const RadialGrid& grid, double tol,
                                double warm_lo) {
  if (k == 0) throw std::invalid_argument("find_epsilon_k: k == 0");
  if (tol < 1e-6) throw std::invalid_argument("find_epsilon_k: tol must be >= 1e-6");
  const int kk = std::abs(k);

  const auto lambda_at = [&](double eps) {
    return flat_branch_lambda1(eps, kk, spec, grid);
  };

  // Establish a sign-changing bracket: lambda < 0 on the lo side (unstable
  // flat branch), > 0 on the hi side.
  double lo = 0.0, hi = 0.0, lam_lo = 0.0, lam_hi = 0.0;
  double probe = 0.5, lam_probe = 0.0;
  if (warm_lo > 0.0) {
    const double lam_warm = lambda_at(warm_lo);
    if (lam_warm < 0.0) {
      lo = warm_lo;
      lam_lo = lam_warm;
      probe = 2.0 * warm_lo;
    }
  }
  lam_probe = lambda_at(probe);
  if (lo > 0.0 && lam_probe > 0.0) {
    hi = probe;
    lam_hi = lam_probe;
  } else if (lam_probe < 0.0) {
    lo = probe;
    lam_lo = lam_probe;
    for (double eps = 2.0 * probe; hi == 0.0; eps *= 2.0) {
      if (eps > kEpsCeil) {
        throw NoSignChangeError("find_epsilon_k: lambda_1 stays negative up to eps = " +
                                std::to_string(kEpsCeil));
      }
      const double lam = lambda_at(eps);
      if (lam > 0.0) {
        hi = eps;
        lam_hi = lam;
      } else {
        lo = eps;
        lam_lo = lam;
      }
    }
  } else {
    hi = probe;
    lam_hi = lam_probe;
    for (double eps = 0.5 * probe; lo == 0.0; eps *= 0.5) {
      if (eps < kEpsFloor) {
        throw NoSignChangeError("find_epsilon_k: lambda_1 stays positive down to eps = " +
                                std::to_string(kEpsFloor));
      }
      const double lam = lambda_at(eps);
      if (lam < 0.0) {
        lo = eps;
        lam_lo = lam;
      } else {
        hi = eps;
        lam_hi = lam;
      }
    }
  }

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double lam = lambda_at(mid);
    if (lam < 0.0) {
      lo = mid;
      lam_lo = lam;
    } else {
      hi = mid;
      lam_hi = lam;
    }
  }

  BifurcationPoint pt;
  pt.k = kk;
  pt.epsilon_k = 0.5 * (lo + hi);
  pt.bracket_lo = lo;
  pt.bracket_hi = hi;
  pt.lambda_lo = lam_lo;
  pt.lambda_hi = lam_hi;
  pt.lambda_residual = lambda_at(pt.epsilon_k);
  return pt;
}

std::vector<BifurcationPoint> sweep(int k_max, const PotentialSpec& spec,
                                    const RadialGrid& grid, double tol) {
  if (k_max < 2 || k_max > 6) {
    throw std::invalid_argument("sweep: k_max must lie in [2, 6]");
  }
  std::vector<BifurcationPoint> points;
  double warm = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    points.push_back(find_epsilon_k(k, spec, grid, tol, warm));
    warm = points.back().epsilon_k;
  }
  return points;
}

OrderingReport flat_ordering_check(double epsilon, int k,
                                   const PotentialSpec& spec,
                                   const RadialGrid& grid) {
  return flat_ordering_check(epsilon, k, k - 1, spec, grid);
}

OrderingReport flat_ordering_check(double epsilon, int k, int k_ref,
                                   const PotentialSpec& spec,
                                   const RadialGrid& grid) {
  if (k == 0 || k_ref == 0) {
    throw std::invalid_argument("flat_ordering_check: windings must be nonzero");
  }
  OrderingReport rep;
  rep.k = std::abs(k);
  rep.k_ref = std::abs(k_ref);
  const ScalarProfile fk = solve_flat(epsilon, rep.k, spec, grid);
  const ScalarProfile fref = rep.k_ref == rep.k
                                 ? fk
                                 : solve_flat(epsilon, rep.k_ref, spec, grid);
  rep.min_gap = 1e300;
  for (int i = 0; i + 1 < grid.count; ++i) {
    const double gap = fref.vals[i] - fk.vals[i];
    rep.min_gap = std::min(rep.min_gap, gap);
    if (gap < 0.0) rep.violations.push_back(i);
  }
  rep.ok = rep.violations.empty();
  return rep;
}

}  // namespace gld
