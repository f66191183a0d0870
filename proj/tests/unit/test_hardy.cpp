#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "riflab/hardy.hpp"

using namespace riflab;
using oracle::cplx;

TEST_CASE("torus mean of a partial derivative at small radius") {
  // d1 phi2 at the origin is -1/2 and the derivative is analytic, so the mean
  // of |d1 phi2|^2 over rT^2 tends to 1/4 as r -> 0.
  const auto f = build_rif(fixture::p2());
  CHECK(torus_mean_partial(f, 0, 2.0, 1e-4) == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("H1 norms equal the multidegree") {
  const auto f = build_rif(fixture::p2());
  const auto e = hp_norm_partial(f, 0, 1.0);
  CHECK(e.status == Finiteness::Finite);
  CHECK(e.extrapolated == doctest::Approx(1.0).epsilon(0.01));
  CHECK(e.monotonicity_violations.empty());
  for (std::size_t j = 1; j < e.means.size(); ++j) CHECK(e.means[j] >= e.means[j - 1]);
}

TEST_CASE("bounded and unbounded partials") {
  const auto g = build_rif(fixture::example3());
  CHECK(hp_norm_partial(g, 2, 8.0).status == Finiteness::Finite);
  const auto f = build_rif(fixture::p2());
  const auto e = hp_norm_partial(f, 0, 1.8);
  CHECK(e.status == Finiteness::Infinite);
  CHECK(std::isinf(e.extrapolated));
}

TEST_CASE("level-set exponent of phi2") {
  const auto f = build_rif(fixture::p2());
  const auto o = omega_measure(f, 0);
  CHECK(o.exponent == doctest::Approx(-0.5).epsilon(0.2));
  CHECK(std::abs(o.exponent + 0.5) < 0.1);
  CHECK(levelset_threshold(o) == doctest::Approx(1.5).epsilon(0.07));
  for (std::size_t j = 1; j < o.measure.size(); ++j)
    CHECK(o.measure[j] <= o.measure[j - 1] + 2 * (o.standard_error[j] + o.standard_error[j - 1]));
}

TEST_CASE("level-set integral test") {
  CHECK(levelset_exponent_test(-0.5, 1.4) == Finiteness::Finite);
  CHECK(levelset_exponent_test(-0.5, 1.6) == Finiteness::Infinite);
  CHECK(levelset_exponent_test(-1.0, 1.9) == Finiteness::Finite);
  CHECK(levelset_exponent_test(-1.0, 2.1) == Finiteness::Infinite);
  CHECK(levelset_exponent_test(0.0, 1.1) == Finiteness::Infinite);
  CHECK(levelset_exponent_test(-0.5, 1.52, 0.05) == Finiteness::Inconclusive);
}

TEST_CASE("phi3 level sets") {
  const auto f = build_rif(fixture::p3());
  OmegaConfig cfg;
  cfg.samples = 50000;
  const auto o = omega_measure(f, 0, cfg);
  CHECK(std::abs(levelset_threshold(o) - 2.0) < 0.15);
}

TEST_CASE("delta bounded away from zero") {
  // 2 - z1/2 - z2/2 has no zeros on the closed bidisk.
  const MultiPoly p(2, {{MultiIndex{0, 0}, 2.0}, {MultiIndex{1, 0}, -0.5}, {MultiIndex{0, 1}, -0.5}});
  const auto f = build_rif(p);
  OmegaConfig cfg;
  cfg.samples = 5000;
  const auto o = omega_measure(f, 0, cfg);
  CHECK(o.bounded_away);
  CHECK(levelset_threshold(o) == kBoundedThreshold);
  for (std::size_t j = 0; j < o.xs.size(); ++j)
    if (o.xs[j] > 1.0 / o.min_delta) CHECK(o.measure[j] == 0.0);
}

TEST_CASE("thresholds") {
  const auto f = build_rif(fixture::p2());
  const auto t = hp_threshold(f, 0);
  CHECK(!t.inconclusive);
  CHECK(t.value == doctest::Approx(1.5).epsilon(0.07));
  CHECK(t.endpoint == Endpoint::Open);

  const auto g = build_rif(fixture::example3());
  ThresholdConfig quick;
  quick.direct = false;
  const auto t1 = hp_threshold(g, 0, quick);
  CHECK(t1.value == doctest::Approx(1.5).epsilon(0.07));
  CHECK(t1.endpoint == Endpoint::Open);
  const auto t3 = hp_threshold(g, 2);
  CHECK(t3.bounded);
  CHECK(t3.value == kBoundedThreshold);
  CHECK(!t3.inconclusive);
}
