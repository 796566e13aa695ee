#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "bsdelab/counterexamples.hpp"
#include "bsdelab/paths.hpp"

using bsdelab::GridConfig;
using bsdelab::PathBundle;

TEST_CASE("square-root family: closed-form values and parameter sensitivity") {
  // y_c(t) = [max(0, (c - t)/2)]^2 vanishes for t >= c and is quadratic before.
  CHECK(bsdelab::sqrt_family_value(0.0, 0.0) == 0.0);
  CHECK(bsdelab::sqrt_family_value(0.0, 1.0) == 0.0);
  CHECK(bsdelab::sqrt_family_value(1.0, 0.0) == 0.25);
  CHECK(bsdelab::sqrt_family_value(1.0, 1.0) == 0.0);
  CHECK(bsdelab::sqrt_family_value(0.5, 0.25) == doctest::Approx(0.015625).epsilon(1e-14));
  CHECK(bsdelab::sqrt_family_value(0.5, 0.75) == 0.0);

  // Distinct members at t = 0: the same equation carries many solutions.
  CHECK(bsdelab::sqrt_family_value(1.0, 0.0) - bsdelab::sqrt_family_value(0.0, 0.0) == 0.25);

  CHECK_THROWS_AS(bsdelab::sqrt_family_value(-0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bsdelab::sqrt_family_value(1.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bsdelab::sqrt_family_value(0.5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(bsdelab::sqrt_family_value(0.5, 1.1), std::invalid_argument);
}

TEST_CASE("square-root family: quadrature residual shrinks like 2/Nt") {
  for (double c : {0.0, 0.5, 1.0}) {
    CAPTURE(c);
    CHECK(bsdelab::verify_sqrt_family(c, 100) <= 2.0 / 100.0);
    CHECK(bsdelab::verify_sqrt_family(c, 10000) <= 2.0 / 10000.0);
  }
  // c = 0 is the identically-zero member: the identity is exact.
  CHECK(bsdelab::verify_sqrt_family(0.0, 100) == 0.0);
  CHECK_THROWS_AS(bsdelab::verify_sqrt_family(0.5, 0), std::invalid_argument);
}

TEST_CASE("quartic pair: zero noise makes the pathwise identity exact") {
  const auto rep = bsdelab::verify_quartic_solution(1.0, PathBundle::zero_noise(8, 16, 0.25));
  CHECK(rep.mean_sup == 0.0);
  CHECK(rep.max_sup == 0.0);
}

TEST_CASE("quartic pair: pathwise residual shrinks under refinement") {
  const auto coarse = bsdelab::verify_quartic_solution(1.0, PathBundle(99, 4000, 256, 0.25));
  const auto fine = bsdelab::verify_quartic_solution(1.0, PathBundle(99, 4000, 1024, 0.25));
  CHECK(coarse.mean_sup > 0.0);
  CHECK(fine.mean_sup < coarse.mean_sup);
  CHECK(coarse.mean_sup / fine.mean_sup >= 1.5);
  CHECK(fine.mean_sup < 0.05);
}

TEST_CASE("strict comparison fails: terminal strictly below c, value still c") {
  GridConfig g;
  g.T = 0.25;
  g.num_time_steps = 256;
  g.domain_half_width = 4.0;
  g.num_space_points = 161;
  g.lipschitz_cap = 2.0;

  for (double c : {0.0, 1.0}) {
    CAPTURE(c);
    const auto rep = bsdelab::strict_comparison_demo(c, g, PathBundle(13, 2000, 64, 0.25));
    CHECK(rep.pass);
    CHECK(std::fabs(rep.y0_numeric - c) <= 0.02 * std::fmax(1.0, std::fabs(c)));
    CHECK(rep.prob_strictly_below >= 0.99);
    CHECK(rep.domain_sensitivity < 0.01 * std::fmax(1.0, std::fabs(c)));
    CHECK(rep.residual_stats.num_paths == 2000);
  }

  GridConfig bad = g;
  bad.num_space_points = 163;  // (Nx - 1) % 8 != 0
  CHECK_THROWS_WITH_AS(
      (void)bsdelab::strict_comparison_demo(1.0, bad, PathBundle(13, 100, 64, 0.25)),
      doctest::Contains("divisible by 8"), std::invalid_argument);
}
