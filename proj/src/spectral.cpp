#include "gld/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gld/errors.hpp"
#include "gld/linalg.hpp"

namespace gld {

namespace {

constexpr double kEigenTol = 1e-9;
constexpr int kMaxInverseIters = 100000;

void require_disk(const RadialGrid& grid, const char* what) {
  if (grid.dim_m != 2) {
    throw std::invalid_argument(std::string(what) + ": operator grid must have dim_m == 2");
  }
}

// y = A x for the interior-node operator (boundary value 0 implied).
void apply_operator(const LinearizedOperator& op, const std::vector<double>& x,
                    std::vector<double>& y) {
  const RadialGrid& g = op.grid;
  const int m = g.count - 1;  // interior nodes
  const double inv_h2 = 1.0 / (g.h * g.h);
  for (int i = 0; i < m; ++i) {
    const double wc = g.nodes[i];
    const double up = g.face(i + 1) * inv_h2 / wc;
    const double lo = i > 0 ? g.face(i) * inv_h2 / wc : 0.0;
    double v = (up + lo - op.coeff[i]) * x[i];
    if (i > 0) v -= lo * x[i - 1];
    if (i + 1 < m) v -= up * x[i + 1];
    y[i] = v;
  }
}

double weighted_dot(const RadialGrid& g, const std::vector<double>& a,
                    const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += g.nodes[i] * a[i] * b[i];
  return s * g.h;
}

}  // namespace

LinearizedOperator linearized_operator(const ScalarProfile& flat,
                                       const PotentialSpec& spec) {
  require_disk(flat.grid, "linearized_operator");
  LinearizedOperator op;
  op.grid = flat.grid;
  op.epsilon = flat.epsilon;
  op.k = flat.k_or_m;
  op.coeff.resize(flat.grid.count);
  const double inv_eps2 = 1.0 / (flat.epsilon * flat.epsilon);
  for (int i = 0; i < flat.grid.count; ++i) {
    op.coeff[i] = inv_eps2 * spec.eval_wp(1.0 - flat.vals[i] * flat.vals[i]);
  }
  return op;
}

LinearizedOperator linearized_operator(const ProfilePair& pair,
                                       const PotentialSpec& spec) {
  require_disk(pair.grid, "linearized_operator");
  LinearizedOperator op;
  op.grid = pair.grid;
  op.epsilon = pair.epsilon;
  op.k = pair.k;
  op.coeff.resize(pair.grid.count);
  const double inv_eps2 = 1.0 / (pair.epsilon * pair.epsilon);
  for (int i = 0; i < pair.grid.count; ++i) {
    const double s = 1.0 - pair.f[i] * pair.f[i] - pair.g[i] * pair.g[i];
    op.coeff[i] = inv_eps2 * spec.eval_wp(s);
  }
  return op;
}

SpectralResult first_eigenvalue(const LinearizedOperator& op) {
  require_disk(op.grid, "first_eigenvalue");
  const RadialGrid& g = op.grid;
  const int m = g.count - 1;
  for (double c : op.coeff) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("first_eigenvalue: non-finite coefficient");
    }
  }

  double cmax = 0.0;
  for (int i = 0; i < m; ++i) cmax = std::max(cmax, op.coeff[i]);
  const double sigma = std::min(0.0, -cmax) - 1.0;

  BandedMatrix shifted(m, 1, 1);
  const double inv_h2 = 1.0 / (g.h * g.h);
  for (int i = 0; i < m; ++i) {
    const double wc = g.nodes[i];
    const double up = g.face(i + 1) * inv_h2 / wc;
    const double lo = i > 0 ? g.face(i) * inv_h2 / wc : 0.0;
    if (i > 0) shifted.at(i, i - 1) = -lo;
    if (i + 1 < m) shifted.at(i, i + 1) = -up;
    shifted.at(i, i) = up + lo - op.coeff[i] - sigma;
  }
  shifted.factor();

  std::vector<double> x(m, 1.0), ax(m), res(m);
  x.resize(m);
  double nrm = std::sqrt(weighted_dot(g, x, x));
  for (double& v : x) v /= nrm;

  double lambda = 0.0;
  bool converged = false;
  for (int iter = 0; iter < kMaxInverseIters; ++iter) {
    shifted.solve(x);
    nrm = std::sqrt(weighted_dot(g, x, x));
    for (double& v : x) v /= nrm;
    apply_operator(op, x, ax);
    lambda = weighted_dot(g, x, ax);
    double r2 = 0.0;
    for (int i = 0; i < m; ++i) {
      res[i] = ax[i] - lambda * x[i];
    }
    r2 = std::sqrt(weighted_dot(g, res, res));
    if (r2 <= kEigenTol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw IterationStalledError("first_eigenvalue: inverse iteration did not reach " +
                                std::to_string(kEigenTol));
  }

  // First eigenfunction has one sign; report it nonnegative with unit
  // L2(disk) norm.
  double mass = 0.0;
  for (int i = 0; i < m; ++i) mass += g.nodes[i] * x[i];
  if (mass < 0.0) {
    for (double& v : x) v = -v;
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const double l2 = std::sqrt(two_pi * weighted_dot(g, x, x));
  SpectralResult out;
  out.lambda1 = lambda;
  out.eigenfunction.assign(g.count, 0.0);
  for (int i = 0; i < m; ++i) out.eigenfunction[i] = x[i] / l2;
  return out;
}

double stability_form_gl(const std::vector<double>& phi,
                         const LinearizedOperator& op) {
  const RadialGrid& g = op.grid;
  if (static_cast<int>(phi.size()) != g.count) {
    throw std::invalid_argument("stability_form_gl: phi size mismatch");
  }
  if (phi.back() != 0.0) {
    throw std::invalid_argument("stability_form_gl: phi must vanish at the boundary row");
  }
  double grad = 0.0;
  for (int j = 1; j < g.count; ++j) {
    const double d = (phi[j] - phi[j - 1]) / g.h;
    grad += g.face(j) * g.h * d * d;
  }
  double mass = 0.0;
  for (int i = 0; i + 1 < g.count; ++i) {
    mass += g.nodes[i] * g.h * op.coeff[i] * phi[i] * phi[i];
  }
  return 2.0 * std::numbers::pi * (grad - mass);
}

HardyCheck hardy_decomposition_check(const std::vector<double>& Phi,
                                     const std::vector<std::vector<double>>& v,
                                     const LinearizedOperator& op) {
  const RadialGrid& g = op.grid;
  const int n = g.count;
  if (static_cast<int>(Phi.size()) != n) {
    throw std::invalid_argument("hardy_decomposition_check: Phi size mismatch");
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (Phi[i] <= 0.0) {
      throw NonPositivePhiError("hardy_decomposition_check: Phi <= 0 at node " +
                                std::to_string(i));
    }
  }
  // The identity integrates the linearized equation by parts, so Phi must be
  // a discrete solution of -Lap Phi = c Phi.
  const double inv_h2 = 1.0 / (g.h * g.h);
  double crit_res = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    double flux = g.face(i + 1) * (Phi[i + 1] - Phi[i]);
    if (i > 0) flux -= g.face(i) * (Phi[i] - Phi[i - 1]);
    const double lap = flux * inv_h2 / g.nodes[i];
    crit_res = std::max(crit_res, std::abs(-lap - op.coeff[i] * Phi[i]));
  }
  if (crit_res > 1e-6) {
    throw std::invalid_argument(
        "hardy_decomposition_check: Phi does not satisfy the linearized "
        "equation (residual " + std::to_string(crit_res) + ")");
  }

  const double half_two_pi = std::numbers::pi;  // 1/2 * 2 pi
  HardyCheck out;
  for (const std::vector<double>& comp : v) {
    if (static_cast<int>(comp.size()) != n) {
      throw std::invalid_argument("hardy_decomposition_check: component size mismatch");
    }
    if (comp.back() != 0.0) {
      throw std::invalid_argument("hardy_decomposition_check: v must vanish on the boundary");
    }
    // Both quadratures live on the annulus without the first axis cell:
    // faces j >= 2, cells i >= 1.  The ratio quadrature also drops the
    // boundary face, where v and Phi vanish together and the continuum
    // integrand is O(h^3).
    for (int j = 2; j < n; ++j) {
      const double d = (comp[j] - comp[j - 1]) / g.h;
      out.form_value += half_two_pi * g.face(j) * g.h * d * d;
      if (j + 1 < n && Phi[j] > 0.0 && Phi[j - 1] > 0.0) {
        const double phiface = 0.5 * (Phi[j] + Phi[j - 1]);
        const double dpsi = (comp[j] / Phi[j] - comp[j - 1] / Phi[j - 1]) / g.h;
        out.decomposition_value +=
            half_two_pi * g.face(j) * g.h * phiface * phiface * dpsi * dpsi;
      }
    }
    for (int i = 1; i + 1 < n; ++i) {
      out.form_value -=
          half_two_pi * g.nodes[i] * g.h * op.coeff[i] * comp[i] * comp[i];
    }
  }
  return out;
}

double hardy_margin(int m) {
  if (m < 2) throw std::invalid_argument("hardy_margin: m < 2");
  const double a = 0.25 * (m - 2.0) * (m - 2.0);
  return a - (m - 1.0);
}

double sphere_area(int m) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m);
}

double equator_stability_form(int m, const ScalarProfile& h_profile,
                              const std::vector<double>& phi,
                              const PotentialSpec& spec) {
  if (h_profile.kind != ProfileKind::Equator || h_profile.k_or_m != m) {
    throw std::invalid_argument("equator_stability_form: profile is not an equator profile in dimension m");
  }
  const RadialGrid& g = h_profile.grid;
  if (g.dim_m != m) {
    throw std::invalid_argument("equator_stability_form: grid dimension mismatch");
  }
  if (static_cast<int>(phi.size()) != g.count) {
    throw std::invalid_argument("equator_stability_form: phi size mismatch");
  }
  if (phi.back() != 0.0) {
    throw std::invalid_argument("equator_stability_form: phi must vanish at r = 1");
  }
  const double inv_eps2 = 1.0 / (h_profile.epsilon * h_profile.epsilon);
  double grad = 0.0;
  for (int j = 1; j < g.count; ++j) {
    const double d = (phi[j] - phi[j - 1]) / g.h;
    grad += g.face_weight(j) * g.h * d * d;
  }
  double mass = 0.0;
  for (int i = 0; i + 1 < g.count; ++i) {
    const double c = inv_eps2 * spec.eval_wp(1.0 - h_profile.vals[i] * h_profile.vals[i]);
    mass += g.cell_weight(i) * g.h * c * phi[i] * phi[i];
  }
  return sphere_area(m) * (grad - mass);
}

double convexity_threshold(const PotentialSpec& spec, double lambda1_domain) {
  if (lambda1_domain <= 0.0) {
    throw std::invalid_argument("convexity_threshold: lambda1_domain must be positive");
  }
  return std::sqrt(std::abs(spec.eval_wp(1.0)) / lambda1_domain);
}

}  // namespace gld
