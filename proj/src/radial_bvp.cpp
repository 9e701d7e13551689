#include "gld/radial_bvp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "gld/errors.hpp"
#include "gld/linalg.hpp"

namespace gld {

namespace {

constexpr double kFlatTol = 1e-8;   // max|g| below this is the flat branch
constexpr double kArmijo = 1e-4;
constexpr double kMinDamping = 1e-9;

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double two_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> inverse_square_coeff(const RadialGrid& grid, double num) {
  std::vector<double> q(grid.count);
  for (int i = 0; i < grid.count; ++i) {
    q[i] = num / (grid.nodes[i] * grid.nodes[i]);
  }
  return q;
}

using ResidualFn =
    std::function<void(const std::vector<double>&, std::vector<double>&)>;
using JacobianFn = std::function<void(const std::vector<double>&, BandedMatrix&)>;

// Newton with Armijo backtracking.  The line search works on the 2-norm
// (the Newton direction is a descent direction for it); convergence is
// declared on the max-norm of the residual.
std::vector<double> damped_newton(int kl, int ku, const ResidualFn& residual,
                                  const JacobianFn& jacobian,
                                  std::vector<double> x,
                                  const NewtonOptions& opts, NewtonStats* stats,
                                  const char* what) {
  const int n = static_cast<int>(x.size());
  std::vector<double> res(n), step(n), trial(n), res_trial(n);
  residual(x, res);
  double rmax = max_abs(res);
  double r2 = two_norm(res);
  int iter = 0;
  while (rmax > opts.tol) {
    if (iter >= opts.max_iters) {
      throw NewtonDivergedError(std::string(what) + ": no convergence in " +
                                std::to_string(opts.max_iters) + " iterations");
    }
    BandedMatrix jac(n, kl, ku);
    jacobian(x, jac);
    try {
      jac.factor();
    } catch (const SingularMatrixError&) {
      throw NewtonDivergedError(std::string(what) + ": singular Jacobian");
    }
    step = res;
    jac.solve(step);
    bool accepted = false;
    for (double t = 1.0; t >= kMinDamping; t *= 0.5) {
      for (int i = 0; i < n; ++i) trial[i] = x[i] - t * step[i];
      residual(trial, res_trial);
      const double t2 = two_norm(res_trial);
      if (t2 <= (1.0 - kArmijo * t) * r2) {
        x.swap(trial);
        res.swap(res_trial);
        r2 = t2;
        rmax = max_abs(res);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw NewtonDivergedError(std::string(what) +
                                ": damping failed to reduce the residual");
    }
    ++iter;
    if (stats) ++stats->iterations;
  }
  if (stats) stats->final_residual = rmax;
  return x;
}

// Scalar problem -(1/r^{m-1})(r^{m-1} u')' + q u = u W'(1-u^2)/eps^2 with
// u(1) = 1 on the last row; the zero-weight axis face needs no ghost.
void scalar_residual(const RadialGrid& g, const std::vector<double>& q,
                     double inv_eps2, const PotentialSpec& spec,
                     const std::vector<double>& u, std::vector<double>& out) {
  const int n = g.count;
  const double inv_h2 = 1.0 / (g.h * g.h);
  for (int i = 0; i + 1 < n; ++i) {
    double flux = g.face_weight(i + 1) * (u[i + 1] - u[i]);
    if (i > 0) flux -= g.face_weight(i) * (u[i] - u[i - 1]);
    const double lap = flux * inv_h2 / g.cell_weight(i);
    const double s = 1.0 - u[i] * u[i];
    out[i] = -lap + q[i] * u[i] - inv_eps2 * u[i] * spec.wp(s);
  }
  out[n - 1] = u[n - 1] - 1.0;
}

void scalar_jacobian(const RadialGrid& g, const std::vector<double>& q,
                     double inv_eps2, const PotentialSpec& spec,
                     const std::vector<double>& u, BandedMatrix& jac) {
  const int n = g.count;
  const double inv_h2 = 1.0 / (g.h * g.h);
  for (int i = 0; i + 1 < n; ++i) {
    const double wc = g.cell_weight(i);
    const double up = g.face_weight(i + 1) * inv_h2 / wc;
    const double lo = i > 0 ? g.face_weight(i) * inv_h2 / wc : 0.0;
    if (i > 0) jac.at(i, i - 1) = -lo;
    jac.at(i, i + 1) = -up;
    const double s = 1.0 - u[i] * u[i];
    jac.at(i, i) = up + lo + q[i] -
                   inv_eps2 * (spec.wp(s) - 2.0 * u[i] * u[i] * wpp_fd(spec, s));
  }
  jac.at(n - 1, n - 1) = 1.0;
}

std::vector<double> newton_scalar(const RadialGrid& g,
                                  const std::vector<double>& q, double epsilon,
                                  const PotentialSpec& spec,
                                  std::vector<double> u,
                                  const NewtonOptions& opts, NewtonStats* stats,
                                  const char* what) {
  const double inv_eps2 = 1.0 / (epsilon * epsilon);
  return damped_newton(
      1, 1,
      [&](const std::vector<double>& x, std::vector<double>& out) {
        scalar_residual(g, q, inv_eps2, spec, x, out);
      },
      [&](const std::vector<double>& x, BandedMatrix& jac) {
        scalar_jacobian(g, q, inv_eps2, spec, x, jac);
      },
      std::move(u), opts, stats, what);
}

// Pair system, unknowns interleaved as [f_0, g_0, f_1, g_1, ...].
void pair_residual(const RadialGrid& g, const std::vector<double>& qf,
                   double inv_eps2, const PotentialSpec& spec,
                   const std::vector<double>& x, std::vector<double>& out) {
  const int n = g.count;
  const double inv_h2 = 1.0 / (g.h * g.h);
  for (int i = 0; i + 1 < n; ++i) {
    const double wc = g.cell_weight(i);
    const double up = g.face_weight(i + 1) * inv_h2 / wc;
    const double lo = i > 0 ? g.face_weight(i) * inv_h2 / wc : 0.0;
    const double f = x[2 * i], gg = x[2 * i + 1];
    double lap_f = up * (x[2 * (i + 1)] - f);
    double lap_g = up * (x[2 * (i + 1) + 1] - gg);
    if (i > 0) {
      lap_f -= lo * (f - x[2 * (i - 1)]);
      lap_g -= lo * (gg - x[2 * (i - 1) + 1]);
    }
    const double s = 1.0 - f * f - gg * gg;
    const double wps = spec.wp(s);
    out[2 * i] = -lap_f + qf[i] * f - inv_eps2 * f * wps;
    out[2 * i + 1] = -lap_g - inv_eps2 * gg * wps;
  }
  out[2 * (n - 1)] = x[2 * (n - 1)] - 1.0;
  out[2 * (n - 1) + 1] = x[2 * (n - 1) + 1];
}

void pair_jacobian(const RadialGrid& g, const std::vector<double>& qf,
                   double inv_eps2, const PotentialSpec& spec,
                   const std::vector<double>& x, BandedMatrix& jac) {
  const int n = g.count;
  const double inv_h2 = 1.0 / (g.h * g.h);
  for (int i = 0; i + 1 < n; ++i) {
    const double wc = g.cell_weight(i);
    const double up = g.face_weight(i + 1) * inv_h2 / wc;
    const double lo = i > 0 ? g.face_weight(i) * inv_h2 / wc : 0.0;
    const double f = x[2 * i], gg = x[2 * i + 1];
    const double s = 1.0 - f * f - gg * gg;
    const double wps = spec.wp(s);
    const double wpps = wpp_fd(spec, s);
    const int rf = 2 * i, rg = 2 * i + 1;
    if (i > 0) {
      jac.at(rf, rf - 2) = -lo;
      jac.at(rg, rg - 2) = -lo;
    }
    jac.at(rf, rf + 2) = -up;
    jac.at(rg, rg + 2) = -up;
    jac.at(rf, rf) = up + lo + qf[i] - inv_eps2 * (wps - 2.0 * f * f * wpps);
    jac.at(rg, rg) = up + lo - inv_eps2 * (wps - 2.0 * gg * gg * wpps);
    jac.at(rf, rg) = 2.0 * inv_eps2 * f * gg * wpps;
    jac.at(rg, rf) = 2.0 * inv_eps2 * gg * f * wpps;
  }
  jac.at(2 * (n - 1), 2 * (n - 1)) = 1.0;
  jac.at(2 * (n - 1) + 1, 2 * (n - 1) + 1) = 1.0;
}

std::vector<double> newton_pair(const RadialGrid& g,
                                const std::vector<double>& qf, double epsilon,
                                const PotentialSpec& spec,
                                std::vector<double> x,
                                const NewtonOptions& opts, NewtonStats* stats) {
  const double inv_eps2 = 1.0 / (epsilon * epsilon);
  return damped_newton(
      2, 2,
      [&](const std::vector<double>& y, std::vector<double>& out) {
        pair_residual(g, qf, inv_eps2, spec, y, out);
      },
      [&](const std::vector<double>& y, BandedMatrix& jac) {
        pair_jacobian(g, qf, inv_eps2, spec, y, jac);
      },
      std::move(x), opts, stats, "solve_pair");
}

// Equator problem written in v = h/r.  The substitution cancels the
// (m-1)/r^2 term against the singular part of the m-dimensional Laplacian
// exactly, leaving the regular conservative form
//   -(1/r^{m+1}) (r^{m+1} v')' = v W'(1 - r^2 v^2)/eps^2,   v(1) = 1,
// which is exact on the linear local branch h = c r at the axis.  Rows are
// scaled by the true cell volume of the r^{m+1} measure; with the midpoint
// value instead, the axis row carries a 2^{m+1}/h^2 coefficient whose
// residual cannot be driven below ~1e-9 in double precision.
double equator_cell_volume(const RadialGrid& g, int i) {
  const int p = g.dim_m + 2;
  return (std::pow(g.face(i + 1), p) - std::pow(g.face(i), p)) / (p * g.h);
}

void equator_residual(const RadialGrid& g, double inv_eps2,
                      const PotentialSpec& spec, const std::vector<double>& v,
                      std::vector<double>& out) {
  const int n = g.count;
  const int m = g.dim_m;
  const double inv_h2 = 1.0 / (g.h * g.h);
  for (int i = 0; i + 1 < n; ++i) {
    const double wc = equator_cell_volume(g, i);
    double flux = std::pow(g.face(i + 1), m + 1) * (v[i + 1] - v[i]);
    if (i > 0) flux -= std::pow(g.face(i), m + 1) * (v[i] - v[i - 1]);
    const double lap = flux * inv_h2 / wc;
    const double r = g.nodes[i];
    const double s = 1.0 - r * r * v[i] * v[i];
    out[i] = -lap - inv_eps2 * v[i] * spec.wp(s);
  }
  out[n - 1] = v[n - 1] - 1.0;
}

void equator_jacobian(const RadialGrid& g, double inv_eps2,
                      const PotentialSpec& spec, const std::vector<double>& v,
                      BandedMatrix& jac) {
  const int n = g.count;
  const int m = g.dim_m;
  const double inv_h2 = 1.0 / (g.h * g.h);
  for (int i = 0; i + 1 < n; ++i) {
    const double wc = equator_cell_volume(g, i);
    const double up = std::pow(g.face(i + 1), m + 1) * inv_h2 / wc;
    const double lo = i > 0 ? std::pow(g.face(i), m + 1) * inv_h2 / wc : 0.0;
    if (i > 0) jac.at(i, i - 1) = -lo;
    jac.at(i, i + 1) = -up;
    const double r = g.nodes[i];
    const double s = 1.0 - r * r * v[i] * v[i];
    jac.at(i, i) = up + lo - inv_eps2 * (spec.wp(s) -
                   2.0 * r * r * v[i] * v[i] * wpp_fd(spec, s));
  }
  jac.at(n - 1, n - 1) = 1.0;
}

void check_disk_grid(const RadialGrid& grid, const char* what) {
  if (grid.dim_m != 2) {
    throw std::invalid_argument(std::string(what) + ": grid.dim_m must be 2");
  }
  if (grid.count < 32) {
    throw GridTooCoarseError(std::string(what) + ": need at least 32 nodes, got " +
                             std::to_string(grid.count));
  }
}

}  // namespace

RadialGrid make_radial_grid(int count, int dim_m) {
  if (count < 2) throw std::invalid_argument("make_radial_grid: count < 2");
  if (dim_m < 2) throw std::invalid_argument("make_radial_grid: dim_m < 2");
  RadialGrid grid;
  grid.count = count;
  grid.dim_m = dim_m;
  grid.h = 2.0 / (2.0 * count - 1.0);
  grid.nodes.resize(count);
  for (int i = 0; i < count; ++i) grid.nodes[i] = (i + 0.5) * grid.h;
  grid.nodes[count - 1] = 1.0;
  return grid;
}

PairOutcome solve_pair(double epsilon, int k, const PotentialSpec& spec,
                       const RadialGrid& grid, const ProfilePair* init,
                       NewtonStats* stats, const NewtonOptions& opts) {
  if (epsilon <= 0.0) throw std::invalid_argument("solve_pair: epsilon <= 0");
  if (k == 0) throw std::invalid_argument("solve_pair: k == 0");
  check_disk_grid(grid, "solve_pair");

  const int n = grid.count;
  const int kk = std::abs(k);
  const std::vector<double> qf =
      inverse_square_coeff(grid, static_cast<double>(kk) * kk);

  std::vector<double> base(2 * n);
  if (init) {
    if (static_cast<int>(init->f.size()) != n ||
        static_cast<int>(init->g.size()) != n) {
      throw std::invalid_argument("solve_pair: init size does not match grid");
    }
    for (int i = 0; i < n; ++i) {
      base[2 * i] = init->f[i];
      base[2 * i + 1] = init->g[i];
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const double r = grid.nodes[i];
      base[2 * i] = std::pow(r, kk);
      base[2 * i + 1] = std::cos(0.5 * std::numbers::pi * r);
    }
    base[2 * (n - 1)] = 1.0;
    base[2 * (n - 1) + 1] = 0.0;
  }

  // Attempt 0 is the seed as given; attempt 1 bumps g away from the flat
  // branch's basin.
  bool any_converged = false;
  bool saw_flat = false;
  double last_max_g = 0.0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<double> x = base;
    if (attempt == 1) {
      for (int i = 0; i + 1 < n; ++i) {
        x[2 * i + 1] += 0.1 * std::sin(std::numbers::pi * grid.nodes[i]);
      }
    }
    if (stats) ++stats->attempts;
    try {
      x = newton_pair(grid, qf, epsilon, spec, std::move(x), opts, stats);
    } catch (const NewtonDivergedError&) {
      continue;
    }
    any_converged = true;

    ProfilePair pair;
    pair.grid = grid;
    pair.epsilon = epsilon;
    pair.k = k;
    pair.f.resize(n);
    pair.g.resize(n);
    for (int i = 0; i < n; ++i) {
      pair.f[i] = x[2 * i];
      pair.g[i] = x[2 * i + 1];
    }
    last_max_g = max_abs(pair.g);
    if (last_max_g < kFlatTol) {
      saw_flat = true;
      continue;  // keep trying the perturbed seed before giving up
    }
    // Solutions come in (f, +-g) pairs; normalize the axis sign.
    double axis_mean = 0.0;
    const int navg = std::min(4, n - 1);
    for (int i = 0; i < navg; ++i) axis_mean += pair.g[i];
    if (axis_mean < 0.0) {
      for (double& v : pair.g) v = -v;
    }
    bool positive = true;
    for (int i = 0; i + 1 < n && positive; ++i) {
      positive = pair.f[i] > 0.0 && pair.g[i] > 0.0;
    }
    if (positive) return pair;
  }

  if (!any_converged && init) {
    throw NewtonDivergedError("solve_pair: all attempts diverged from the given init");
  }
  NoEscapingSolution none;
  none.epsilon = epsilon;
  none.k = k;
  none.max_abs_g = last_max_g;
  none.converged_to_flat = saw_flat;
  return none;
}

ScalarProfile solve_flat(double epsilon, int k, const PotentialSpec& spec,
                         const RadialGrid& grid, NewtonStats* stats,
                         const NewtonOptions& opts) {
  if (epsilon <= 0.0) throw std::invalid_argument("solve_flat: epsilon <= 0");
  if (k == 0) throw std::invalid_argument("solve_flat: k == 0");
  check_disk_grid(grid, "solve_flat");
  const int kk = std::abs(k);
  const std::vector<double> q =
      inverse_square_coeff(grid, static_cast<double>(kk) * kk);
  std::vector<double> seed(grid.count);
  for (int i = 0; i < grid.count; ++i) seed[i] = std::pow(grid.nodes[i], kk);
  seed[grid.count - 1] = 1.0;

  ScalarProfile prof;
  prof.grid = grid;
  prof.epsilon = epsilon;
  prof.k_or_m = kk;
  prof.kind = ProfileKind::FlatBranch;
  if (stats) ++stats->attempts;
  try {
    prof.vals = newton_scalar(grid, q, epsilon, spec, seed, opts, stats,
                              "solve_flat");
    return prof;
  } catch (const NewtonDivergedError&) {
    // Steep boundary layers at small epsilon sit far from the r^k seed;
    // walk epsilon down geometrically, warm-starting each solve.
  }
  double eps_cur = std::max(0.5, 2.0 * epsilon);
  std::vector<double> warm = seed;
  while (true) {
    if (stats) ++stats->attempts;
    warm = newton_scalar(grid, q, eps_cur, spec, std::move(warm), opts, stats,
                         "solve_flat(continuation)");
    if (eps_cur == epsilon) break;
    eps_cur = std::max(epsilon, 0.75 * eps_cur);
  }
  prof.vals = std::move(warm);
  return prof;
}

ScalarProfile solve_equator(double epsilon, int m, const PotentialSpec& spec,
                            const RadialGrid& grid, NewtonStats* stats,
                            const NewtonOptions& opts) {
  if (epsilon <= 0.0) throw std::invalid_argument("solve_equator: epsilon <= 0");
  if (m < 2) throw std::invalid_argument("solve_equator: m < 2");
  if (grid.dim_m != m) {
    throw std::invalid_argument("solve_equator: grid.dim_m must equal m");
  }
  if (grid.count < 32) throw GridTooCoarseError("solve_equator: need >= 32 nodes");
  const auto newton_at = [&](double eps, std::vector<double> v) {
    const double inv_eps2 = 1.0 / (eps * eps);
    if (stats) ++stats->attempts;
    return damped_newton(
        1, 1,
        [&](const std::vector<double>& y, std::vector<double>& out) {
          equator_residual(grid, inv_eps2, spec, y, out);
        },
        [&](const std::vector<double>& y, BandedMatrix& jac) {
          equator_jacobian(grid, inv_eps2, spec, y, jac);
        },
        std::move(v), opts, stats, "solve_equator");
  };

  ScalarProfile prof;
  prof.grid = grid;
  prof.epsilon = epsilon;
  prof.k_or_m = m;
  prof.kind = ProfileKind::Equator;
  const std::vector<double> seed(grid.count, 1.0);  // v = h/r, regular branch
  try {
    prof.vals = newton_at(epsilon, seed);
  } catch (const NewtonDivergedError&) {
    // Small epsilon puts v far from the flat seed near the axis; continue
    // down in epsilon with warm starts.
    double eps_cur = std::max(0.5, 2.0 * epsilon);
    std::vector<double> warm = seed;
    while (true) {
      warm = newton_at(eps_cur, std::move(warm));
      if (eps_cur == epsilon) break;
      eps_cur = std::max(epsilon, 0.75 * eps_cur);
    }
    prof.vals = std::move(warm);
  }
  for (int i = 0; i < grid.count; ++i) prof.vals[i] *= grid.nodes[i];
  return prof;
}

double residual_norm(const ProfilePair& pair, const PotentialSpec& spec) {
  const int n = pair.grid.count;
  const int kk = std::abs(pair.k);
  const std::vector<double> qf =
      inverse_square_coeff(pair.grid, static_cast<double>(kk) * kk);
  std::vector<double> x(2 * n), res(2 * n);
  for (int i = 0; i < n; ++i) {
    x[2 * i] = pair.f[i];
    x[2 * i + 1] = pair.g[i];
  }
  pair_residual(pair.grid, qf, 1.0 / (pair.epsilon * pair.epsilon), spec, x, res);
  return max_abs(res);
}

double residual_norm(const ScalarProfile& profile, const PotentialSpec& spec) {
  std::vector<double> res(profile.grid.count);
  if (profile.kind == ProfileKind::FlatBranch) {
    const double num = static_cast<double>(profile.k_or_m) * profile.k_or_m;
    const std::vector<double> q = inverse_square_coeff(profile.grid, num);
    scalar_residual(profile.grid, q, 1.0 / (profile.epsilon * profile.epsilon),
                    spec, profile.vals, res);
  } else {
    std::vector<double> v(profile.grid.count);
    for (int i = 0; i < profile.grid.count; ++i) {
      v[i] = profile.vals[i] / profile.grid.nodes[i];
    }
    equator_residual(profile.grid, 1.0 / (profile.epsilon * profile.epsilon),
                     spec, v, res);
  }
  return max_abs(res);
}

ProfilePair limit_profile(int k, const RadialGrid& grid) {
  if (k == 0) throw std::invalid_argument("limit_profile: k == 0");
  if (grid.dim_m != 2) throw std::invalid_argument("limit_profile: grid.dim_m must be 2");
  const int kk = std::abs(k);
  ProfilePair pair;
  pair.grid = grid;
  pair.epsilon = 0.0;
  pair.k = k;
  pair.f.resize(grid.count);
  pair.g.resize(grid.count);
  for (int i = 0; i < grid.count; ++i) {
    const double rk = std::pow(grid.nodes[i], kk);
    const double denom = 1.0 + rk * rk;
    pair.f[i] = 2.0 * rk / denom;
    pair.g[i] = (1.0 - rk * rk) / denom;
  }
  return pair;
}

RadialEnergy pair_energy(const ProfilePair& pair, const PotentialSpec& spec) {
  const RadialGrid& g = pair.grid;
  const int n = g.count;
  const double two_pi = 2.0 * std::numbers::pi;
  const double kk = std::abs(pair.k);
  RadialEnergy e;
  for (int j = 1; j < n; ++j) {
    const double df = (pair.f[j] - pair.f[j - 1]) / g.h;
    const double dg = (pair.g[j] - pair.g[j - 1]) / g.h;
    e.dirichlet += 0.5 * g.face(j) * g.h * (df * df + dg * dg);
  }
  const double inv_2eps2 =
      pair.epsilon > 0.0 ? 0.5 / (pair.epsilon * pair.epsilon) : 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = g.nodes[i];
    const double cell = (i + 1 < n ? g.h : 0.5 * g.h) * r;
    e.dirichlet += cell * 0.5 * kk * kk * pair.f[i] * pair.f[i] / (r * r);
    if (pair.epsilon > 0.0) {
      const double s = 1.0 - pair.f[i] * pair.f[i] - pair.g[i] * pair.g[i];
      e.potential += cell * inv_2eps2 * spec.eval_w(s);
    }
  }
  e.dirichlet *= two_pi;
  e.potential *= two_pi;
  return e;
}

}  // namespace gld
