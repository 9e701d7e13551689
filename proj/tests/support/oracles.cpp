#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

double bessel_j0(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m <= 60; ++m) {
    term *= -q / (static_cast<double>(m) * m);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double bessel_j0_first_root() {
  double lo = 2.0, hi = 3.0;
  if (bessel_j0(lo) <= 0.0 || bessel_j0(hi) >= 0.0) {
    throw std::logic_error("bessel_j0_first_root: bad bracket");
  }
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j0(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double disk_lambda1() {
  const double j01 = bessel_j0_first_root();
  return j01 * j01;
}

namespace {

struct State {
  double f;
  double fp;
};

State rhs(double r, const State& s, double inv_eps2, double k2,
          const gld::PotentialSpec& spec) {
  State d;
  d.f = s.fp;
  d.fp = -s.fp / r + k2 / (r * r) * s.f - inv_eps2 * s.f * spec.wp(1.0 - s.f * s.f);
  return d;
}

// Integrates from r0 to 1 and reports f on a dense trace for later
// interpolation; aborts early once f blows past the physical range.
struct Trace {
  std::vector<double> r;
  std::vector<double> f;
  double f_end = 0.0;
  bool blew_up = false;
};

Trace integrate(double c, double epsilon, int k, const gld::PotentialSpec& spec,
                double r0, double dr) {
  const double inv_eps2 = 1.0 / (epsilon * epsilon);
  const double k2 = static_cast<double>(k) * k;
  State s{c * std::pow(r0, k), c * k * std::pow(r0, k - 1)};
  Trace tr;
  double r = r0;
  tr.r.push_back(r);
  tr.f.push_back(s.f);
  while (r < 1.0 - 1e-14) {
    const double step = std::min(dr, 1.0 - r);
    const State k1 = rhs(r, s, inv_eps2, k2, spec);
    const State s2{s.f + 0.5 * step * k1.f, s.fp + 0.5 * step * k1.fp};
    const State k2v = rhs(r + 0.5 * step, s2, inv_eps2, k2, spec);
    const State s3{s.f + 0.5 * step * k2v.f, s.fp + 0.5 * step * k2v.fp};
    const State k3 = rhs(r + 0.5 * step, s3, inv_eps2, k2, spec);
    const State s4{s.f + step * k3.f, s.fp + step * k3.fp};
    const State k4 = rhs(r + step, s4, inv_eps2, k2, spec);
    s.f += step / 6.0 * (k1.f + 2.0 * k2v.f + 2.0 * k3.f + k4.f);
    s.fp += step / 6.0 * (k1.fp + 2.0 * k2v.fp + 2.0 * k3.fp + k4.fp);
    r += step;
    tr.r.push_back(r);
    tr.f.push_back(s.f);
    if (std::abs(s.f) > 10.0) {
      tr.blew_up = true;
      break;
    }
  }
  tr.f_end = s.f;
  return tr;
}

double end_value(double c, double epsilon, int k, const gld::PotentialSpec& spec,
                 double r0, double dr) {
  const Trace tr = integrate(c, epsilon, k, spec, r0, dr);
  return tr.blew_up ? 10.0 : tr.f_end;
}

}  // namespace

std::vector<double> shoot_flat_profile(double epsilon, int k,
                                       const gld::PotentialSpec& spec,
                                       const std::vector<double>& radii) {
  if (k <= 0) throw std::invalid_argument("shoot_flat_profile: k must be positive");
  const double r0 = 1e-6;
  const double dr = 2e-4;

  // f(1; c) is increasing in c; expand then bisect.
  double c_lo = 0.0, c_hi = 1.0;
  while (end_value(c_hi, epsilon, k, spec, r0, dr) < 1.0) {
    c_lo = c_hi;
    c_hi *= 2.0;
    if (c_hi > 1e12) throw std::logic_error("shoot_flat_profile: no upper bracket");
  }
  for (int it = 0; it < 200 && (c_hi - c_lo) > 1e-14 * c_hi; ++it) {
    const double mid = 0.5 * (c_lo + c_hi);
    (end_value(mid, epsilon, k, spec, r0, dr) < 1.0 ? c_lo : c_hi) = mid;
  }
  const double c = 0.5 * (c_lo + c_hi);

  const Trace tr = integrate(c, epsilon, k, spec, r0, dr);
  std::vector<double> out(radii.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (r <= tr.r.front()) {
      out[i] = tr.f.front();
      continue;
    }
    while (cursor + 1 < tr.r.size() && tr.r[cursor + 1] < r) ++cursor;
    const std::size_t j = std::min(cursor + 1, tr.r.size() - 1);
    const double t = (r - tr.r[cursor]) / (tr.r[j] - tr.r[cursor]);
    out[i] = (1.0 - t) * tr.f[cursor] + t * tr.f[j];
  }
  return out;
}

double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace oracle
