#include <cmath>

#include "doctest.h"
#include "submod/errors.hpp"
#include "submod/root_finding.hpp"

using namespace submod;

TEST_CASE("bisection finds roots of decreasing functions") {
  const auto r = bisect_decreasing([](double x) { return 2.0 - x * x * x; }, 0.0, 1.0);
  CHECK(r.root == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
  CHECK(r.expansions > 0);  // [0, 1] does not bracket the root
  CHECK(std::abs(r.residual) <= 1e-10);

  const auto s = bisect_decreasing([](double x) { return -x; }, -1.0, 1.0);
  CHECK(std::abs(s.root) < 1e-12);
}

TEST_CASE("bisection reports a missing bracket") {
  BisectionOptions o;
  o.max_expansions = 5;
  CHECK_THROWS_AS(bisect_decreasing([](double) { return 1.0; }, 0.0, 1.0, o), NumericError);
  CHECK_THROWS_AS(bisect_decreasing([](double) { return NAN; }, 0.0, 1.0), NumericError);
}

TEST_CASE("generalized inverse of a step function") {
  // f jumps from 0 to 1 at x = 0.3; smallest x with f(x) >= 0.5 is 0.3
  const auto r = generalized_inverse([](double x) { return x >= 0.3 ? 1.0 : 0.0; }, 0.5, -1.0, 1.0);
  CHECK(r.root == doctest::Approx(0.3).epsilon(1e-11));
  const auto e = generalized_inverse([](double x) { return std::exp(x); }, 1.5, -1.0, 1.0);
  CHECK(e.root == doctest::Approx(std::log(1.5)).epsilon(1e-11));
}

TEST_CASE("ternary minimization") {
  const auto m = ternary_minimize([](double x) { return (x - 7.0) * (x - 7.0) + 1.0; }, -1.0, 1.0);
  CHECK(m.argmin == doctest::Approx(7.0).epsilon(1e-6));
  CHECK(m.value == doctest::Approx(1.0).epsilon(1e-12));

  // flat bottom: any point of [1, 2] is a minimizer, the value is what matters
  const auto f = ternary_minimize([](double x) { return std::max({1.0 - x, 0.0, x - 2.0}); }, -5.0, 5.0);
  CHECK(f.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f.argmin >= 1.0 - 1e-9);
  CHECK(f.argmin <= 2.0 + 1e-9);

  CHECK_THROWS_AS(ternary_minimize([](double x) { return -x; }, 0.0, 1.0), DomainError);
}
