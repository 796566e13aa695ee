#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "bsdelab/modulus.hpp"

using bsdelab::Modulus;

TEST_CASE("modulus evaluates its closed forms") {
  const Modulus holder = Modulus::holder(1.5, 2.0 / 3.0);
  // 0.008 = 0.2^3, so 0.008^(2/3) = 0.04.
  CHECK(holder(0.008) == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(holder(0.0) == 0.0);

  const Modulus linear = Modulus::linear(2.0);
  CHECK(linear(3.0) == 6.0);

  const Modulus capped = Modulus::capped_linear(2.0, 1.5);
  CHECK(capped(0.5) == 1.0);
  CHECK(capped(3.0) == 1.5);
}

TEST_CASE("modulus rejects bad arguments and bad parameters") {
  CHECK_THROWS_AS((void)Modulus::holder(1.0, 0.5)(-1e-9), std::domain_error);
  CHECK_THROWS_AS(Modulus::holder(1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(Modulus::holder(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Modulus::holder(-1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Modulus::capped_linear(1.0, -2.0), std::invalid_argument);
  // Growth constant below the analytic minimum is rejected at construction.
  CHECK_THROWS_AS(Modulus::holder(1.5, 2.0 / 3.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Modulus::linear(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("analytic minimal growth matches the grid search") {
  const Modulus candidates[] = {
      Modulus::holder(1.5, 2.0 / 3.0),
      Modulus::holder(0.7, 0.25),
      Modulus::linear(2.0),
      Modulus::capped_linear(2.0, 1.5),
  };
  for (const Modulus& m : candidates) {
    const double analytic = m.analytic_minimal_growth();
    const double searched = bsdelab::minimal_growth_constant(m);
    CHECK(searched == doctest::Approx(analytic).epsilon(1e-5));
    CHECK(m.growth_constant() >= analytic * (1.0 - 1e-12));
  }
  // Holder closed form: K * a^a * (1-a)^(1-a), maximum of K x^a / (x+1) at
  // x = a/(1-a).
  const double a = 2.0 / 3.0;
  const double expected = 1.5 * std::pow(a, a) * std::pow(1.0 - a, 1.0 - a);
  CHECK(Modulus::holder(1.5, a).analytic_minimal_growth() ==
        doctest::Approx(expected).epsilon(1e-14));
  // Capped linear: maximum at the kink x = cap/K.
  CHECK(Modulus::capped_linear(2.0, 1.5).analytic_minimal_growth() ==
        doctest::Approx(2.0 * 1.5 / (1.5 + 2.0)).epsilon(1e-14));
}

TEST_CASE("certification accepts the shipped kinds") {
  for (const Modulus& m : {Modulus::holder(1.5, 2.0 / 3.0), Modulus::linear(1.0),
                           Modulus::capped_linear(2.0, 1.5)}) {
    const auto cert = bsdelab::certify_modulus(m, 2000, 42);
    CHECK(cert.pass);
    CHECK(cert.zero_at_origin);
    CHECK(cert.worst_subadditivity <= bsdelab::kCertifyTolerance);
    CHECK(cert.worst_monotonicity <= bsdelab::kCertifyTolerance);
    CHECK(cert.worst_growth <= bsdelab::kCertifyTolerance);
  }
}

TEST_CASE("certification rejects non-moduli") {
  // x^2 is superadditive: (x+y)^2 > x^2 + y^2 for positive x, y.
  const auto square = bsdelab::certify_modulus_fn([](double x) { return x * x; }, 1e9, 2000, 42);
  CHECK_FALSE(square.pass);
  CHECK(square.worst_subadditivity > 1.0);

  // A decreasing function fails monotonicity.
  const auto decreasing =
      bsdelab::certify_modulus_fn([](double x) { return 1.0 / (1.0 + x); }, 10.0, 2000, 42);
  CHECK_FALSE(decreasing.pass);
  CHECK(decreasing.worst_monotonicity > 0.0);
}
