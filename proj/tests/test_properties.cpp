// Randomized checks of the structural properties every measure must have.

#include <cmath>

#include "doctest.h"
#include "submod/lattice.hpp"
#include "submod/measures.hpp"
#include "support.hpp"

using namespace submod;
using testing_support::Draws;

namespace {

const char* const kMonetary[] = {"var:0.9",         "es:0.8",         "aes:0.5,0.8:0,0.1", "distortion:power:0.5",
                                 "shortfall:exp:1", "shortfall:poly2exp", "oce:quadlin",   "oce:piecewise:0,4",
                                 "mmd:square:es:0.5"};

}  // namespace

TEST_CASE("law invariance under permutation") {
  Draws d(10);
  for (const char* text : kMonetary) {
    const auto m = RiskMeasureSpec::parse(text);
    for (int t = 0; t < 30; ++t) {
      const auto v = d.normal(11);
      CHECK_MESSAGE(m(EmpiricalSample(v)) == doctest::Approx(m(EmpiricalSample(d.shuffled(v)))).epsilon(1e-12), text);
    }
  }
}

TEST_CASE("cash invariance") {
  Draws d(11);
  for (const char* text : kMonetary) {
    const auto m = RiskMeasureSpec::parse(text);
    for (int t = 0; t < 30; ++t) {
      const EmpiricalSample x(d.normal(9));
      const double c = d.uniform(-3, 3);
      CHECK_MESSAGE(std::abs(m(x.shifted(c)) - m(x) - c) <= 1e-9, text);
    }
  }
}

TEST_CASE("positive homogeneity of VaR, ES and distortion measures") {
  Draws d(12);
  for (const char* text : {"var:0.9", "es:0.7", "distortion:power:0.5", "distortion:es:0.6"}) {
    const auto m = RiskMeasureSpec::parse(text);
    for (int t = 0; t < 30; ++t) {
      const EmpiricalSample x(d.normal(10));
      const double lambda = d.uniform(0.01, 20);
      CHECK_MESSAGE(m(x.scaled(lambda)) == doctest::Approx(lambda * m(x)).epsilon(1e-13), text);
    }
  }
  const EmpiricalSample x{0.3, -1.2, 0.9, 2.2};
  CHECK(var_historical(x.scaled(3.0), 0.7) == 3.0 * var_historical(x, 0.7));
}

TEST_CASE("monotonicity") {
  Draws d(13);
  for (const char* text : kMonetary) {
    const auto m = RiskMeasureSpec::parse(text);
    for (int t = 0; t < 30; ++t) {
      // scaled down so g(t) = t² stays in its monotone range for the MMD
      auto a = d.normal(10, 0.25);
      auto b = a;
      for (double& e : b) e += std::abs(d.uniform(0, 0.3));
      CHECK_MESSAGE(m(EmpiricalSample(a)) <= m(EmpiricalSample(b)) + 1e-9, text);
    }
  }
}

TEST_CASE("ES dominates VaR at the same level") {
  Draws d(14);
  for (int t = 0; t < 200; ++t) {
    const EmpiricalSample x(d.normal(3 + d.index(40)));
    for (double p : {0.5, 0.8, 0.9, 0.95, 0.99}) CHECK(es_historical(x, p) >= var_historical(x, p));
  }
}

TEST_CASE("comonotonic additivity of distortion measures") {
  Draws d(15);
  for (const auto& phi : {DistortionFunction::power(0.4), DistortionFunction::expected_shortfall(0.7),
                          DistortionFunction::identity()}) {
    for (int t = 0; t < 30; ++t) {
      auto a = d.normal(12), b = d.normal(12);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      // same permutation applied to both keeps them comonotone
      std::vector<std::size_t> perm(12);
      std::iota(perm.begin(), perm.end(), 0);
      std::reverse(perm.begin() + 3, perm.end());
      std::vector<double> pa(12), pb(12);
      for (std::size_t i = 0; i < 12; ++i) pa[i] = a[perm[i]], pb[i] = b[perm[i]];
      const EmpiricalSample x(pa), y(pb);
      CHECK(std::abs(distortion_rho(pointwise_sum(x, y), phi) - distortion_rho(x, phi) - distortion_rho(y, phi)) <=
            1e-12);
    }
  }
}

TEST_CASE("expected loss is modular to rounding") {
  Draws d(16);
  for (const char* text : {"el:linear", "el:square", "el:expraw:1"}) {
    const auto m = RiskMeasureSpec::parse(text);
    for (int t = 0; t < 200; ++t) {
      const EmpiricalSample x(d.normal(10)), y(d.normal(10));
      CHECK_MESSAGE(std::abs(submodularity_gap(m, x, y).gap) <= 1e-12, text);
    }
  }
}

TEST_CASE("exponential shortfall coincides with the exponential certainty equivalent") {
  Draws d(17);
  for (double gamma : {0.5, 1.0, 2.0}) {
    for (int t = 0; t < 50; ++t) {
      const EmpiricalSample x(d.normal(10));
      CHECK(std::abs(shortfall_rho(x, LossFunction::exponential(gamma)) -
                     certainty_equivalent(x, LossFunction::exponential_raw(gamma))) <= 1e-8);
    }
  }
}

TEST_CASE("ES distortion reproduces historical ES when n(1-p) is an integer") {
  Draws d(18);
  for (int t = 0; t < 200; ++t) {
    const EmpiricalSample x(d.normal(20));
    for (double p : {0.5, 0.75, 0.9, 0.95}) {
      CHECK(std::abs(distortion_rho(x, DistortionFunction::expected_shortfall(p)) - es_historical(x, p)) <= 1e-12);
    }
  }
}
