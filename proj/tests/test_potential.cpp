#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gld/errors.hpp"
#include "gld/potential.hpp"

using namespace gld;

TEST_CASE("quartic closed-form values") {
  const PotentialSpec q = builtin_quartic();
  CHECK(q.w(0.0) == 0.0);
  CHECK(q.w(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q.wp(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.w(-2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(q.wp(0.0) == 0.0);
}

TEST_CASE("exponential closed-form values") {
  const PotentialSpec e = builtin_exponential();
  CHECK(e.w(0.0) == 0.0);
  CHECK(e.wp(0.0) == 0.0);
  CHECK(e.w(1.0) == doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-14));
}

TEST_CASE("assumption verification on builtin potentials") {
  const std::vector<double> grid = {-2.0, -1.0, 0.0, 0.5, 1.0};
  CHECK(verify_assumptions(builtin_quartic(), grid).all_pass());

  // 101 uniform points on [-3, 1], origin snapped exactly.
  std::vector<double> fine(101);
  for (int i = 0; i < 101; ++i) fine[i] = -3.0 + 4.0 * i / 100.0;
  fine[75] = 0.0;
  CHECK(verify_assumptions(builtin_exponential(), fine).all_pass());

  CHECK(verify_assumptions(builtin_quartic(), default_assumption_grid()).all_pass());
}

TEST_CASE("linear 'potential' fails positivity") {
  PotentialSpec bad;
  bad.w = [](double t) { return t; };
  bad.wp = [](double) { return 1.0; };
  bad.name = "linear";
  const auto rep = verify_assumptions(bad, {-2.0, -1.0, 0.0, 0.5, 1.0});
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(rep.positive_off_zero);
  CHECK(rep.worst_positivity_value < 0.0);
  CHECK(rep.worst_positivity_t < 0.0);
  CHECK_FALSE(rep.derivative_zero_at_zero);
}

TEST_CASE("empty grid and missing origin are rejected") {
  CHECK_THROWS_AS(verify_assumptions(builtin_quartic(), {}), EmptyGridError);
  CHECK_THROWS_AS(verify_assumptions(builtin_quartic(), {-1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("domain guard refuses t > 1") {
  const PotentialSpec q = builtin_quartic();
  CHECK_THROWS_AS(q.eval_w(1.1), PotentialDomainViolation);
  CHECK_THROWS_AS(q.eval_wp(1.0 + 1e-6), PotentialDomainViolation);
  CHECK(q.eval_w(1.0) == doctest::Approx(0.5));
  CHECK(q.eval_w(-50.0) == doctest::Approx(1250.0));
}

TEST_CASE("wp matches a central difference of w") {
  const double fd_step = 1e-4;
  for (const PotentialSpec& spec : {builtin_quartic(), builtin_exponential()}) {
    for (double t = -9.5; t <= 0.999 - fd_step; t += 0.101) {
      const double fd = (spec.w(t + fd_step) - spec.w(t - fd_step)) / (2.0 * fd_step);
      CHECK(std::abs(fd - spec.wp(t)) <= 1e-6);
    }
  }
}

TEST_CASE("wp is nondecreasing and negative left of the origin") {
  for (const PotentialSpec& spec : {builtin_quartic(), builtin_exponential()}) {
    double prev = spec.wp(-10.0);
    for (double t = -10.0 + 0.011; t <= 1.0; t += 0.011) {
      const double cur = spec.wp(t);
      CHECK(cur >= prev);
      if (t < 0.0) CHECK(cur < 0.0);
      prev = cur;
    }
  }
}

TEST_CASE("finite-difference second derivative helper") {
  CHECK(wpp_fd(builtin_quartic(), 0.3) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(wpp_fd(builtin_quartic(), 1.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(wpp_fd(builtin_exponential(), -1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-7));
}

TEST_CASE("potential lookup by name") {
  CHECK(potential_by_name("quartic").name == "quartic");
  CHECK(potential_by_name("exponential").name == "exponential");
  CHECK_THROWS_AS(potential_by_name("sextic"), ConfigError);
}
