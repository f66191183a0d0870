#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "riflab/errors.hpp"
#include "riflab/rif.hpp"

using namespace riflab;
using oracle::cplx;

TEST_CASE("phi2 numerator") {
  const auto f = build_rif(fixture::p2());
  CHECK(f.multidegree() == MultiIndex{1, 1});
  CHECK(std::abs(f.ptilde().coeff(MultiIndex{1, 1}) - 2.0) < 1e-15);
  CHECK(std::abs(f.ptilde().coeff(MultiIndex{1, 0}) + 1.0) < 1e-15);
  CHECK(f.certificate().max_unimodular_deviation < 1e-12);
  CHECK(f.certificate().min_interior_modulus > 0.0);
}

TEST_CASE("stable product denominator") {
  const MultiPoly p(2, {{MultiIndex{0, 0}, 1.0}, {MultiIndex{1, 1}, -0.5}});
  const auto f = build_rif(p);
  CHECK(std::abs(f.ptilde().coeff(MultiIndex{1, 1}) - 1.0) < 1e-15);
  CHECK(std::abs(f.ptilde().coeff(MultiIndex{0, 0}) + 0.5) < 1e-15);
}

TEST_CASE("rejections") {
  SUBCASE("zero at the origin") {
    const MultiPoly p(2, {{MultiIndex{1, 0}, 1.0}, {MultiIndex{0, 1}, 0.1}});
    try {
      build_rif(p);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::InteriorZero || e.kind() == ErrorKind::DegenerateVariable));
    }
  }
  SUBCASE("constant in a variable") {
    const MultiPoly p(2, {{MultiIndex{0, 0}, 2.0}, {MultiIndex{1, 0}, -1.0}});
    try {
      build_rif(p);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateVariable);
    }
  }
  SUBCASE("zero inside only") {
    // 1/2 - z1 z2 vanishes at z1 = z2 = 1/sqrt 2
    const MultiPoly p(2, {{MultiIndex{0, 0}, 0.5}, {MultiIndex{1, 1}, -1.0}});
    try {
      build_rif(p);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InteriorZero);
    }
  }
}

TEST_CASE("unimodular on the torus away from (1,1)") {
  const auto f = build_rif(fixture::example3());
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> th(-oracle::pi, oracle::pi);
  for (int t = 0; t < 2000; ++t) {
    const std::vector<cplx> z{std::polar(1.0, th(rng)), std::polar(1.0, th(rng)), std::polar(1.0, th(rng))};
    if (std::abs(f.p().eval(z)) < 1e-4) continue;
    CHECK(std::abs(std::abs(f.eval(z)) - 1.0) < 1e-9);
  }
}

TEST_CASE("partial derivative evaluation against a difference quotient") {
  const auto f = build_rif(fixture::example3());
  const std::vector<cplx> z{cplx(0.3, 0.1), cplx(-0.2, 0.4), cplx(0.5, -0.3)};
  const double h = 1e-6;
  for (std::size_t k = 0; k < 3; ++k) {
    auto zp = z, zm = z;
    zp[k] += h;
    zm[k] -= h;
    const cplx fd = (f.eval(zp) - f.eval(zm)) / (2 * h);
    CHECK(std::abs(f.eval_partial(k, z) - fd) < 1e-7);
  }
}

TEST_CASE("slice Blaschke zeros of phi2") {
  const auto f = build_rif(fixture::p2());
  const std::vector<cplx> minus{-1.0};
  auto s = slice_blaschke(f, 1, minus);
  REQUIRE(s.zeros.size() == 1);
  CHECK(std::abs(s.zeros[0] - 1.0 / 3.0) < 1e-14);
  CHECK(*s.delta == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  for (double theta : {0.3, 1.0, 2.0, 3.0}) {
    const std::vector<cplx> zh{std::polar(1.0, theta)};
    s = slice_blaschke(f, 1, zh);
    REQUIRE(s.delta);
    CHECK(*s.delta == doctest::Approx(oracle::phi2_delta(theta)).epsilon(1e-12));
  }

  const std::vector<cplx> one{1.0};
  s = slice_blaschke(f, 1, one);
  CHECK(s.degree_defect == 1);
  CHECK(s.zeros.empty());
}
