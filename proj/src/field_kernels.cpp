#include "gld/field_kernels.hpp"

#include <cmath>
#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace gld {

namespace {

// Ring-parallel driver: body(i) fills ring i's cell in a partials array,
// the caller reduces in ring order.
template <typename Body>
void for_rings(int n_r, Exec exec, const Body& body) {
  if (exec == Exec::Parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_r; ++i) body(i);
#else
    for (int i = 0; i < n_r; ++i) body(i);
#endif
  } else {
    for (int i = 0; i < n_r; ++i) body(i);
  }
}

inline double sq(double x) { return x * x; }

}  // namespace

EnergyBreakdown gl_energy_kernel(const VectorField& field, double epsilon,
                                 const PotentialSpec& spec, Exec exec) {
  const DiskGrid& g = field.grid;
  const int n = field.n;
  const bool with_pot = epsilon > 0.0;
  const double inv_2eps2 = with_pot ? 0.5 / (epsilon * epsilon) : 0.0;

  std::vector<double> dir(g.n_r, 0.0), pot(g.n_r, 0.0);
  for_rings(g.n_r, exec, [&](int i) {
    const double r = g.radii[i];
    double d = 0.0, p = 0.0;
    // radial faces between ring i and i+1
    if (i + 1 < g.n_r) {
      const double w = 0.5 * g.face(i + 1) * g.dtheta / g.h;
      for (int j = 0; j < g.n_theta; ++j) {
        const double* a = field.at(i, j);
        const double* b = field.at(i + 1, j);
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += sq(b[c] - a[c]);
        d += w * s;
      }
    }
    // angular faces within ring i
    {
      const double w = 0.5 * g.ring_width(i) / (r * g.dtheta);
      for (int j = 0; j < g.n_theta; ++j) {
        const int jn = j + 1 == g.n_theta ? 0 : j + 1;
        const double* a = field.at(i, j);
        const double* b = field.at(i, jn);
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += sq(b[c] - a[c]);
        d += w * s;
      }
    }
    // potential cells
    if (with_pot) {
      const double area = g.cell_area(i);
      for (int j = 0; j < g.n_theta; ++j) {
        const double* a = field.at(i, j);
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += sq(a[c]);
        p += area * inv_2eps2 * spec.w(1.0 - s);
      }
    }
    dir[i] = d;
    pot[i] = p;
  });

  EnergyBreakdown out;
  for (int i = 0; i < g.n_r; ++i) {
    out.dirichlet += dir[i];
    out.potential += pot[i];
  }
  return out;
}

double dirichlet_energy_kernel(const VectorField& field, Exec exec) {
  return gl_energy_kernel(field, 0.0, PotentialSpec{}, exec).dirichlet;
}

void gl_gradient_kernel(const VectorField& field, double epsilon,
                        const PotentialSpec& spec, bool with_potential,
                        std::vector<double>& grad, Exec exec) {
  const DiskGrid& g = field.grid;
  const int n = field.n;
  grad.assign(field.values.size(), 0.0);
  const double inv_eps2 = with_potential ? 1.0 / (epsilon * epsilon) : 0.0;

  for_rings(g.n_r - 1, exec, [&](int i) {
    const double r = g.radii[i];
    const double area = g.cell_area(i);
    const double w_out = g.face(i + 1) * g.dtheta / g.h;          // face to ring i+1
    const double w_in = i > 0 ? g.face(i) * g.dtheta / g.h : 0.0; // face to ring i-1
    const double w_ang = g.ring_width(i) / (r * g.dtheta);
    for (int j = 0; j < g.n_theta; ++j) {
      const double* u = field.at(i, j);
      const double* up = field.at(i + 1, j);
      const double* um = i > 0 ? field.at(i - 1, j) : nullptr;
      const int jp = j + 1 == g.n_theta ? 0 : j + 1;
      const int jm = j == 0 ? g.n_theta - 1 : j - 1;
      const double* ul = field.at(i, jm);
      const double* ur = field.at(i, jp);
      double* out = grad.data() + field.index(i, j);

      double s = 0.0;
      for (int c = 0; c < n; ++c) s += sq(u[c]);
      const double wp_term =
          with_potential ? inv_eps2 * spec.wp(1.0 - s) : 0.0;

      for (int c = 0; c < n; ++c) {
        double v = w_out * (u[c] - up[c]);
        if (um) v += w_in * (u[c] - um[c]);
        v += w_ang * (2.0 * u[c] - ul[c] - ur[c]);
        out[c] = v / area - wp_term * u[c];
      }
    }
  });
}

double max_sq_norm_kernel(const VectorField& field, Exec exec) {
  const DiskGrid& g = field.grid;
  const int n = field.n;
  std::vector<double> ring_max(g.n_r, 0.0);
  for_rings(g.n_r, exec, [&](int i) {
    double m = 0.0;
    for (int j = 0; j < g.n_theta; ++j) {
      const double* u = field.at(i, j);
      double s = 0.0;
      for (int c = 0; c < n; ++c) s += sq(u[c]);
      m = std::max(m, s);
    }
    ring_max[i] = m;
  });
  double m = 0.0;
  for (double v : ring_max) m = std::max(m, v);
  return m;
}

double max_node_norm(const DiskGrid& grid, int n, const std::vector<double>& a,
                     Exec exec) {
  if (a.size() != static_cast<std::size_t>(grid.n_r) * grid.n_theta * n) {
    throw std::invalid_argument("max_node_norm: size mismatch");
  }
  std::vector<double> ring_max(grid.n_r, 0.0);
  for_rings(grid.n_r, exec, [&](int i) {
    double m = 0.0;
    const double* base = a.data() + static_cast<std::size_t>(i) * grid.n_theta * n;
    for (int j = 0; j < grid.n_theta; ++j) {
      double s = 0.0;
      for (int c = 0; c < n; ++c) s += sq(base[j * n + c]);
      m = std::max(m, s);
    }
    ring_max[i] = m;
  });
  double m = 0.0;
  for (double v : ring_max) m = std::max(m, v);
  return std::sqrt(m);
}

double weighted_dot_kernel(const DiskGrid& grid, int n,
                           const std::vector<double>& x,
                           const std::vector<double>& y,
                           const std::vector<double>& ring_weight, Exec exec) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("weighted_dot_kernel: size mismatch");
  }
  std::vector<double> partial(grid.n_r, 0.0);
  for_rings(grid.n_r, exec, [&](int i) {
    const double w = grid.cell_area(i) *
                     (ring_weight.empty() ? 1.0 : ring_weight[i]);
    const std::size_t base = static_cast<std::size_t>(i) * grid.n_theta * n;
    double s = 0.0;
    for (int j = 0; j < grid.n_theta * n; ++j) s += x[base + j] * y[base + j];
    partial[i] = w * s;
  });
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

}  // namespace gld
