#pragma once

#include <functional>
#include <string>
#include <vector>

namespace gld {

// Penalization potential W on (-inf, 1], supplied pointwise together with
// its derivative.  Contract: W(0) = 0, W > 0 away from 0, W strictly
// convex, W' continuous.  Nothing here may assume a second derivative.
// Immutable after construction; safe to share across concurrent solves.
struct PotentialSpec {
  std::function<double(double)> w;
  std::function<double(double)> wp;
  std::string name;

  // Guarded evaluation: throws PotentialDomainViolation for t > 1.
  double eval_w(double t) const;
  double eval_wp(double t) const;
};

// W(t) = t^2/2.  Plugged into the energy this is the classical
// (1-|u|^2)^2/(4 eps^2) quartic term.
PotentialSpec builtin_quartic();

// W(t) = e^t - 1 - t.  Second instance so nothing can silently
// specialize to the quartic.
PotentialSpec builtin_exponential();

// Lookup for CLI configs: "quartic" | "exponential".
PotentialSpec potential_by_name(const std::string& name);

struct AssumptionReport {
  bool zero_at_zero = false;            // w(0) == 0
  bool positive_off_zero = false;       // w(t) > 0 for sampled t != 0
  bool midpoint_convex = false;         // w((s+t)/2) < (w(s)+w(t))/2
  bool derivative_zero_at_zero = false; // wp(0) == 0

  // Worst violating samples, meaningful only when the matching flag is false.
  double worst_positivity_t = 0.0;
  double worst_positivity_value = 0.0;
  double worst_convexity_s = 0.0;
  double worst_convexity_t = 0.0;
  double worst_convexity_gap = 0.0;

  bool all_pass() const {
    return zero_at_zero && positive_off_zero && midpoint_convex &&
           derivative_zero_at_zero;
  }
};

// Sampling-based verification of the structural assumptions on W.  The
// assumptions are global statements about a black-box callable, so they
// can only be spot-checked on a grid.  samples must be nonempty, contain
// 0 exactly, and stay inside (-inf, 1].
AssumptionReport verify_assumptions(const PotentialSpec& spec,
                                    const std::vector<double>& samples);

// 1001 points on [-10, 1] with the node nearest the origin snapped to 0.
std::vector<double> default_assumption_grid();

// Centered finite difference of wp with step 1e-6, one-sided when t + step
// would leave the domain.  Used by Newton Jacobians in place of the second
// derivative the C^1 contract does not provide.
double wpp_fd(const PotentialSpec& spec, double t, double step = 1e-6);

}  // namespace gld
