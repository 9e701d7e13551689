#include "gld/field_minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gld/errors.hpp"

namespace gld {

namespace {

constexpr double kDomainSlack = 1e-12;
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;

void require_n3(const VectorField& field, const char* what) {
  if (field.n != 3) {
    throw std::invalid_argument(std::string(what) + ": requires n = 3");
  }
}

void check_e_index(const VectorField& field, int e_index, const char* what) {
  if (e_index < 1 || e_index > field.n) {
    throw std::invalid_argument(std::string(what) + ": e_index out of range");
  }
}

}  // namespace

BoundaryData boundary_degree_k(int k, int n, const DiskGrid& grid) {
  if (k == 0) throw std::invalid_argument("boundary_degree_k: k == 0");
  if (n < 3) throw std::invalid_argument("boundary_degree_k: n must be >= 3");
  BoundaryData bd;
  bd.n_theta = grid.n_theta;
  bd.n = n;
  bd.kind = BoundaryKind::DegreeK;
  bd.param = k;
  bd.values.assign(static_cast<std::size_t>(grid.n_theta) * n, 0.0);
  for (int j = 0; j < grid.n_theta; ++j) {
    const double phi = grid.theta(j);
    bd.at(j)[0] = std::cos(k * phi);
    bd.at(j)[1] = std::sin(k * phi);
  }
  return bd;
}

BoundaryData boundary_horizontal(double a, int n, const DiskGrid& grid) {
  if (n < 3) throw std::invalid_argument("boundary_horizontal: n must be >= 3");
  BoundaryData bd;
  bd.n_theta = grid.n_theta;
  bd.n = n;
  bd.kind = BoundaryKind::Horizontal;
  bd.param = a;
  bd.values.assign(static_cast<std::size_t>(grid.n_theta) * n, 0.0);
  for (int j = 0; j < grid.n_theta; ++j) {
    const double x1 = std::cos(grid.theta(j));
    bd.at(j)[0] = std::cos(a * x1);
    bd.at(j)[1] = std::sin(a * x1);
  }
  return bd;
}

int winding_number(const BoundaryData& bd) {
  double total = 0.0;
  for (int j = 0; j < bd.n_theta; ++j) {
    const int jn = j + 1 == bd.n_theta ? 0 : j + 1;
    const double ax = bd.at(j)[0], ay = bd.at(j)[1];
    const double bx = bd.at(jn)[0], by = bd.at(jn)[1];
    total += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

EnergyBreakdown gl_energy(const VectorField& field, double epsilon,
                          const PotentialSpec& spec) {
  if (epsilon <= 0.0) throw std::invalid_argument("gl_energy: epsilon <= 0");
  const double max_sq = max_sq_norm_kernel(field);
  if (max_sq > 1.0 + kDomainSlack) {
    throw PotentialDomainViolation("gl_energy: |u|^2 = " + std::to_string(max_sq) +
                                   " exceeds 1 (W is defined on (-inf, 1])");
  }
  return gl_energy_kernel(field, epsilon, spec);
}

namespace {

// Per-ring diagonal of the discrete operator plus a potential curvature
// scale; fixed over the run so the preconditioned iteration stays
// deterministic.
std::vector<double> ring_preconditioner(const DiskGrid& g, double epsilon,
                                        const PotentialSpec& spec,
                                        bool with_potential) {
  std::vector<double> d(g.n_r, 1.0);
  const double pot_scale =
      with_potential ? 3.0 * std::abs(spec.wp(1.0)) / (epsilon * epsilon) : 0.0;
  for (int i = 0; i + 1 < g.n_r; ++i) {
    const double area = g.cell_area(i);
    const double lap = (g.face(i) + g.face(i + 1)) * g.dtheta / g.h +
                       2.0 * g.ring_width(i) / (g.radii[i] * g.dtheta);
    d[i] = lap / area + pot_scale;
  }
  return d;
}

double interior_grad_max(const VectorField& field, const std::vector<double>& grad) {
  const DiskGrid& g = field.grid;
  double m = 0.0;
  for (int i = 0; i + 1 < g.n_r; ++i) {
    const double* base = grad.data() + field.index(i, 0);
    for (int j = 0; j < g.n_theta * field.n; ++j) {
      m = std::max(m, std::abs(base[j]));
    }
  }
  return m;
}

}  // namespace

VectorField gl_descent(const VectorField& init, double epsilon,
                       const PotentialSpec& spec, const DescentOptions& opts,
                       DescentStats* stats) {
  if (epsilon <= 0.0) throw std::invalid_argument("gl_descent: epsilon <= 0");
  if (boundary_mismatch(init) != 0.0) {
    throw std::invalid_argument("gl_descent: init does not respect the boundary ring");
  }
  const DiskGrid& g = init.grid;
  const int n = init.n;

  VectorField u = init;
  EnergyBreakdown eb = gl_energy(u, epsilon, spec);
  double energy = eb.total();

  const std::vector<double> diag = ring_preconditioner(g, epsilon, spec, true);
  std::vector<double> grad, grad_new, dir(u.values.size(), 0.0);
  std::vector<double> s(u.values.size(), 0.0), y(u.values.size(), 0.0);
  gl_gradient_kernel(u, epsilon, spec, true, grad);
  double gmax = interior_grad_max(u, grad);

  double alpha = 0.25;
  VectorField trial = u;
  int iter = 0;
  for (; iter < opts.max_iters && gmax > opts.tol; ++iter) {
    // preconditioned direction
    for (int i = 0; i + 1 < g.n_r; ++i) {
      const std::size_t base = u.index(i, 0);
      const double inv_d = 1.0 / diag[i];
      for (int t = 0; t < g.n_theta * n; ++t) dir[base + t] = grad[base + t] * inv_d;
    }
    // slope along -dir in the area metric
    const double slope = weighted_dot_kernel(g, n, grad, dir, {});

    double step = alpha;
    bool accepted = false;
    double trial_energy = 0.0;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      for (std::size_t t = 0; t < u.values.size(); ++t) {
        trial.values[t] = u.values[t] - step * dir[t];
      }
      if (max_sq_norm_kernel(trial) > 1.0 + kDomainSlack) {
        step *= 0.5;
        if (stats) ++stats->backtracks;
        continue;  // stay inside W's domain
      }
      trial_energy = gl_energy_kernel(trial, epsilon, spec).total();
      if (trial_energy <= energy - kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
      if (stats) ++stats->backtracks;
    }
    if (!accepted) {
      throw MaxItersExceededError("gl_descent: line search failed at gradient norm " +
                                  std::to_string(gmax));
    }

    for (std::size_t t = 0; t < u.values.size(); ++t) {
      s[t] = trial.values[t] - u.values[t];
    }
    u.values.swap(trial.values);
    energy = trial_energy;
    gl_gradient_kernel(u, epsilon, spec, true, grad_new);
    for (std::size_t t = 0; t < grad.size(); ++t) y[t] = grad_new[t] - grad[t];
    grad.swap(grad_new);
    gmax = interior_grad_max(u, grad);

    // BB1 step in the preconditioned metric
    const double ss = weighted_dot_kernel(g, n, s, s, diag);
    const double sy = weighted_dot_kernel(g, n, s, y, {});
    if (sy > 0.0) {
      alpha = std::min(1e6, std::max(1e-12, ss / sy));
    } else {
      alpha = std::min(1e6, 4.0 * step);
    }
  }

  if (gmax > opts.tol) {
    throw MaxItersExceededError("gl_descent: " + std::to_string(opts.max_iters) +
                                " iterations, gradient norm " + std::to_string(gmax));
  }
  if (stats) {
    stats->iterations = iter;
    stats->final_grad_norm = gmax;
    stats->energy = energy;
  }
  return u;
}

double escape_metric(const VectorField& field, int e_index) {
  check_e_index(field, e_index, "escape_metric");
  const int c = e_index - 1;
  double m = 0.0;
  for (int i = 0; i < field.grid.n_r; ++i) {
    for (int j = 0; j < field.grid.n_theta; ++j) {
      m = std::max(m, std::abs(field.at(i, j)[c]));
    }
  }
  return m;
}

VectorField vertical_transform(const VectorField& field, int dim_V) {
  if (dim_V < 0 || dim_V >= field.n) {
    throw std::invalid_argument("vertical_transform: need 0 <= dim_V < n");
  }
  VectorField out = field;
  const auto apply = [&](double* u) {
    double tail = 0.0;
    for (int c = dim_V; c < field.n; ++c) tail += u[c] * u[c];
    for (int c = dim_V; c + 1 < field.n; ++c) u[c] = 0.0;
    u[field.n - 1] = std::sqrt(tail);
  };
  for (int i = 0; i < field.grid.n_r; ++i) {
    for (int j = 0; j < field.grid.n_theta; ++j) apply(out.at(i, j));
  }
  for (int j = 0; j < field.grid.n_theta; ++j) apply(out.boundary.at(j));
  return out;
}

VectorField reflect(const VectorField& field, int e_index) {
  check_e_index(field, e_index, "reflect");
  const int c = e_index - 1;
  VectorField out = field;
  for (int i = 0; i < field.grid.n_r; ++i) {
    for (int j = 0; j < field.grid.n_theta; ++j) out.at(i, j)[c] = -out.at(i, j)[c];
  }
  for (int j = 0; j < field.grid.n_theta; ++j) {
    out.boundary.at(j)[c] = -out.boundary.at(j)[c];
  }
  return out;
}

double mode_purity(const VectorField& field, int k) {
  require_n3(field, "mode_purity");
  const DiskGrid& g = field.grid;
  const int nt = g.n_theta;
  using cd = std::complex<double>;

  // Ring DFTs of w = u1 + i u2 and z = u3.
  std::vector<cd> what(static_cast<std::size_t>(g.n_r) * nt);
  std::vector<cd> zhat(static_cast<std::size_t>(g.n_r) * nt);
  std::vector<cd> roots(nt);
  for (int j = 0; j < nt; ++j) {
    const double ang = -2.0 * std::numbers::pi * j / nt;
    roots[j] = cd(std::cos(ang), std::sin(ang));
  }
  for (int i = 0; i < g.n_r; ++i) {
    for (int m = 0; m < nt; ++m) {
      cd aw(0.0, 0.0), az(0.0, 0.0);
      for (int j = 0; j < nt; ++j) {
        const double* u = field.at(i, j);
        const cd root = roots[(static_cast<long long>(m) * j) % nt];
        aw += cd(u[0], u[1]) * root;
        az += cd(u[2], 0.0) * root;
      }
      what[static_cast<std::size_t>(i) * nt + m] = aw / static_cast<double>(nt);
      zhat[static_cast<std::size_t>(i) * nt + m] = az / static_cast<double>(nt);
    }
  }

  const int k_idx = ((k % nt) + nt) % nt;
  double total = 0.0, wanted = 0.0;
  for (int m = 0; m < nt; ++m) {
    double em = 0.0;  // energy of mode m in w
    double ez = 0.0;  // and in z
    // radial faces
    for (int i = 0; i + 1 < g.n_r; ++i) {
      const double wgt = 0.5 * g.face(i + 1) * g.dtheta / g.h * nt;
      em += wgt * std::norm(what[(i + 1ull) * nt + m] - what[static_cast<std::size_t>(i) * nt + m]);
      ez += wgt * std::norm(zhat[(i + 1ull) * nt + m] - zhat[static_cast<std::size_t>(i) * nt + m]);
    }
    // angular faces
    const double shift = 2.0 * std::numbers::pi * m / nt;
    const double mode_factor = std::norm(cd(std::cos(shift), std::sin(shift)) - cd(1.0, 0.0));
    for (int i = 0; i < g.n_r; ++i) {
      const double wgt = 0.5 * g.ring_width(i) / (g.radii[i] * g.dtheta) * nt * mode_factor;
      em += wgt * std::norm(what[static_cast<std::size_t>(i) * nt + m]);
      ez += wgt * std::norm(zhat[static_cast<std::size_t>(i) * nt + m]);
    }
    total += em + ez;
    if (m == k_idx) wanted += em;
    if (m == 0) wanted += ez;
  }
  if (total == 0.0) return 1.0;
  return wanted / total;
}

Dichotomy dichotomy_check(const VectorField& field, int e_index) {
  check_e_index(field, e_index, "dichotomy_check");
  const int c = e_index - 1;
  const DiskGrid& g = field.grid;
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i + 1 < g.n_r; ++i) {
    for (int j = 0; j < g.n_theta; ++j) {
      const double v = std::abs(field.at(i, j)[c]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double scale = g.h * g.h;
  if (lo > scale) return Dichotomy::StrictlyPositive;
  if (hi < scale) return Dichotomy::IdenticallyZero;
  return Dichotomy::Mixed;
}

void sign_normalize(VectorField& field, int e_index) {
  check_e_index(field, e_index, "sign_normalize");
  const int c = e_index - 1;
  double mean = 0.0;
  for (int j = 0; j < field.grid.n_theta; ++j) mean += field.at(0, j)[c];
  if (mean >= 0.0) return;
  for (int i = 0; i < field.grid.n_r; ++i) {
    for (int j = 0; j < field.grid.n_theta; ++j) field.at(i, j)[c] = -field.at(i, j)[c];
  }
  for (int j = 0; j < field.grid.n_theta; ++j) {
    field.boundary.at(j)[c] = -field.boundary.at(j)[c];
  }
}

VectorField lift_profile_pair(const ProfilePair& pair, const DiskGrid& grid) {
  if (pair.grid.count != grid.n_r) {
    throw std::invalid_argument("lift_profile_pair: radial resolution mismatch");
  }
  const BoundaryData bd = boundary_degree_k(pair.k, 3, grid);
  VectorField out = make_field(grid, bd);
  for (int i = 0; i + 1 < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_theta; ++j) {
      const double phi = grid.theta(j);
      double* u = out.at(i, j);
      u[0] = pair.f[i] * std::cos(pair.k * phi);
      u[1] = pair.f[i] * std::sin(pair.k * phi);
      u[2] = pair.g[i];
    }
  }
  return out;
}

VectorField random_ball_field(const DiskGrid& grid, const BoundaryData& bd,
                              std::uint64_t seed, double scale) {
  VectorField out = make_field(grid, bd);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int i = 0; i + 1 < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_theta; ++j) {
      double* u = out.at(i, j);
      double norm2 = 2.0;
      while (norm2 > 1.0) {
        norm2 = 0.0;
        for (int c = 0; c < out.n; ++c) {
          u[c] = uni(rng);
          norm2 += u[c] * u[c];
        }
      }
      for (int c = 0; c < out.n; ++c) u[c] *= scale;
    }
  }
  return out;
}

VectorField horizontal_field(double a, int n, const DiskGrid& grid) {
  const BoundaryData bd = boundary_horizontal(a, n, grid);
  VectorField out = make_field(grid, bd);
  for (int i = 0; i + 1 < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_theta; ++j) {
      const double x1 = grid.radii[i] * std::cos(grid.theta(j));
      double* u = out.at(i, j);
      u[0] = std::cos(a * x1);
      u[1] = std::sin(a * x1);
    }
  }
  return out;
}

std::vector<double> axis_value(const VectorField& field) {
  std::vector<double> mean(field.n, 0.0);
  for (int j = 0; j < field.grid.n_theta; ++j) {
    const double* u = field.at(0, j);
    for (int c = 0; c < field.n; ++c) mean[c] += u[c];
  }
  for (double& v : mean) v /= field.grid.n_theta;
  return mean;
}

}  // namespace gld
