#include "gld/potential.hpp"

#include <cmath>
#include <cstdlib>

#include "gld/errors.hpp"

namespace gld {

namespace {

constexpr double kDomainSlack = 1e-12;

void check_domain(double t, const std::string& name) {
  if (t > 1.0 + kDomainSlack) {
    throw PotentialDomainViolation("potential '" + name + "' evaluated at t=" +
                                   std::to_string(t) + " > 1");
  }
}

}  // namespace

double PotentialSpec::eval_w(double t) const {
  check_domain(t, name);
  return w(t);
}

double PotentialSpec::eval_wp(double t) const {
  check_domain(t, name);
  return wp(t);
}

PotentialSpec builtin_quartic() {
  PotentialSpec spec;
  spec.w = [](double t) { return 0.5 * t * t; };
  spec.wp = [](double t) { return t; };
  spec.name = "quartic";
  return spec;
}

PotentialSpec builtin_exponential() {
  PotentialSpec spec;
  spec.w = [](double t) { return std::expm1(t) - t; };
  spec.wp = [](double t) { return std::expm1(t); };
  spec.name = "exponential";
  return spec;
}

PotentialSpec potential_by_name(const std::string& name) {
  if (name == "quartic") return builtin_quartic();
  if (name == "exponential") return builtin_exponential();
  throw ConfigError("unknown potential '" + name +
                    "' (expected quartic|exponential)");
}

AssumptionReport verify_assumptions(const PotentialSpec& spec,
                                    const std::vector<double>& samples) {
  if (samples.empty()) throw EmptyGridError("verify_assumptions: empty sample grid");

  bool has_zero = false;
  for (double t : samples) {
    check_domain(t, spec.name);
    if (t == 0.0) has_zero = true;
  }
  if (!has_zero) {
    throw std::invalid_argument("verify_assumptions: sample grid must contain 0");
  }

  AssumptionReport rep;
  rep.zero_at_zero = (spec.w(0.0) == 0.0);
  rep.derivative_zero_at_zero = (spec.wp(0.0) == 0.0);

  rep.positive_off_zero = true;
  double worst_w = 0.0;
  for (double t : samples) {
    if (t == 0.0) continue;
    const double wt = spec.w(t);
    if (wt <= 0.0 && (rep.positive_off_zero || wt < worst_w)) {
      rep.positive_off_zero = false;
      worst_w = wt;
      rep.worst_positivity_t = t;
      rep.worst_positivity_value = wt;
    }
  }

  rep.midpoint_convex = true;
  std::vector<double> wvals(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) wvals[i] = spec.w(samples[i]);
  double worst_gap = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const double mid = 0.5 * (samples[i] + samples[j]);
      const double gap = spec.w(mid) - 0.5 * (wvals[i] + wvals[j]);
      if (gap >= 0.0 && (rep.midpoint_convex || gap > worst_gap)) {
        rep.midpoint_convex = false;
        worst_gap = gap;
        rep.worst_convexity_s = samples[i];
        rep.worst_convexity_t = samples[j];
        rep.worst_convexity_gap = gap;
      }
    }
  }
  return rep;
}

std::vector<double> default_assumption_grid() {
  const int n = 1001;
  std::vector<double> grid(n);
  double best = 1e30;
  int best_i = 0;
  for (int i = 0; i < n; ++i) {
    grid[i] = -10.0 + 11.0 * i / (n - 1);
    if (std::abs(grid[i]) < best) {
      best = std::abs(grid[i]);
      best_i = i;
    }
  }
  grid[best_i] = 0.0;
  return grid;
}

double wpp_fd(const PotentialSpec& spec, double t, double step) {
  if (t + step <= 1.0) {
    return (spec.wp(t + step) - spec.wp(t - step)) / (2.0 * step);
  }
  return (spec.wp(t) - spec.wp(t - step)) / step;
}

}  // namespace gld
