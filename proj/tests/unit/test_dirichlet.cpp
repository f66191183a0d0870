#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "riflab/dirichlet.hpp"
#include "riflab/errors.hpp"
#include "riflab/rif.hpp"

using namespace riflab;
using oracle::cplx;
using oracle::pi;

namespace {

SeriesSource rif_source(const RIF& f) {
  return [&f](const MultiIndex& orders) { return expand_ratio(f.ptilde(), f.p(), orders); };
}

}  // namespace

TEST_CASE("weighted sums of polynomials") {
  const auto m = MultiPoly::monomial(MultiIndex{1, 1});
  CHECK(weighted_partial_sum(CoeffBox::from_poly(m, MultiIndex{3, 3}), WeightVector{1, 1}) == doctest::Approx(4.0));
  const MultiPoly s(2, {{MultiIndex{1, 0}, 1.0}, {MultiIndex{0, 1}, 1.0}});
  CHECK(weighted_partial_sum(CoeffBox::from_poly(s, MultiIndex{3, 3}), WeightVector{2, 0}) == doctest::Approx(5.0));
  CHECK_THROWS_AS(weighted_partial_sum(CoeffBox::from_poly(s, MultiIndex{3, 3}), WeightVector{1, 1, 1}), Error);
}

TEST_CASE("zeta partial sums of 1/(1 - z1 z2)") {
  const MultiPoly p(2, {{MultiIndex{0, 0}, 1.0}, {MultiIndex{1, 1}, -1.0}});
  const auto box = expand_ratio(MultiPoly::constant(2, 1.0), p, MultiIndex{2000, 2000});
  const double s = weighted_partial_sum(box, WeightVector{-1, -1});
  // tail of sum (1+k)^-2 beyond 2001 terms is about 1/2001
  CHECK(std::abs(s - pi * pi / 6) < 1.0 / 2000);
  CHECK(s < pi * pi / 6);
}

TEST_CASE("weighted sums match a brute-force oracle") {
  const auto f = build_rif(fixture::p2());
  const auto box = expand_ratio(f.ptilde(), f.p(), MultiIndex{40, 40});
  for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, 0.5}, {-1.0, 0.3}, {1.0, -0.5}}) {
    const double want = oracle::weighted_sum_2d(oracle::phi2, 40, a, b);
    CHECK(weighted_partial_sum(box, WeightVector{a, b}) == doctest::Approx(want).epsilon(1e-13));
  }
  const double sub = weighted_partial_sum(box, WeightVector{0.5, 0.5}, MultiIndex{10, 10});
  CHECK(sub == doctest::Approx(oracle::weighted_sum_2d(oracle::phi2, 10, 0.5, 0.5)).epsilon(1e-13));
}

TEST_CASE("derivative shift norms") {
  const auto m = MultiPoly::monomial(MultiIndex{1, 1});
  CHECK(derivative_shift_norm(CoeffBox::from_poly(m, MultiIndex{2, 2}), 0, WeightVector{1, 1}) ==
        doctest::Approx(2.0));
  const auto sq = MultiPoly::monomial(MultiIndex{2});
  CHECK(derivative_shift_norm(CoeffBox::from_poly(sq, MultiIndex{3}), 0, WeightVector{0}) == doctest::Approx(1.0));
  const auto c = MultiPoly::constant(2, 3.0);
  CHECK(derivative_shift_norm(CoeffBox::from_poly(c, MultiIndex{2, 2}), 1, WeightVector{1, 1}) == 0.0);
}

TEST_CASE("phi2 membership") {
  const auto f = build_rif(fixture::p2());
  const auto sched = geometric_schedule(16, 256);
  const auto at = [&](double a) { return classify_membership(rif_source(f), WeightVector{a, a}, sched); };
  CHECK(at(0.5).status == Membership::Convergent);
  CHECK(at(0.74).status == Membership::Convergent);
  const auto div = at(1.0);
  CHECK(div.status == Membership::Divergent);
  CHECK(div.tail_exponent == doctest::Approx(-0.5).epsilon(0.1));
  const auto conv = at(0.5);
  REQUIRE(conv.norm_estimate);
  CHECK(conv.partial_sums.size() == sched.size());
}

TEST_CASE("terminating series converge") {
  const auto m = MultiPoly::monomial(MultiIndex{2, 1});
  const SeriesSource src = [&](const MultiIndex& o) { return CoeffBox::from_poly(m, o); };
  const auto v = classify_membership(src, WeightVector{3, 3}, geometric_schedule(4, 32));
  CHECK(v.status == Membership::Convergent);
  CHECK(std::isinf(v.tail_exponent));
  CHECK(*v.norm_estimate == doctest::Approx(27.0 * 8.0));
}

TEST_CASE("short schedules are rejected") {
  const auto f = build_rif(fixture::p2());
  const std::vector<int> sched{4, 8, 16};
  CHECK_THROWS_AS(classify_membership(rif_source(f), WeightVector{0, 0}, sched), Error);
}

TEST_CASE("integral norm for nonpositive weights") {
  const DiskFunction one = [](std::span<const cplx>) { return cplx(1.0); };
  auto e = integral_norm_leq0(one, WeightVector{-1, -1});
  CHECK(e.converged);
  CHECK(e.value == doctest::Approx(pi * pi).epsilon(1e-6));
  e = integral_norm_leq0(one, WeightVector{-2});
  CHECK(e.value == doctest::Approx(pi / 2).epsilon(1e-6));

  QuadConfig norm;
  norm.normalized_area = true;
  e = integral_norm_leq0(one, WeightVector{-1, -1}, norm);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-6));

  const DiskFunction inv = [](std::span<const cplx> z) { return 1.0 / (2.0 - z[0] - z[1]); };
  e = integral_norm_leq0(inv, WeightVector{-1, -1});
  CHECK(e.converged);
  CHECK(std::isfinite(e.value));

  CHECK_THROWS_AS(integral_norm_leq0(one, WeightVector{0.5, -1}), Error);
}

TEST_CASE("integral norm and coefficient norm are comparable") {
  // For alpha = -1 the normalized integral is sum |a(k)|^2 prod 1/(1+k_i).
  const MultiPoly q(2, {{MultiIndex{0, 0}, 1.0}, {MultiIndex{2, 1}, cplx(0.5, -1.0)}, {MultiIndex{0, 3}, 2.0}});
  QuadConfig cfg;
  cfg.normalized_area = true;
  const auto e = integral_norm_leq0([&](std::span<const cplx> z) { return q.eval(z); }, WeightVector{-1, -1}, cfg);
  const double coeff = 1.0 + 1.25 / 6.0 + 4.0 / 4.0;
  CHECK(e.value == doctest::Approx(coeff).epsilon(1e-6));
}
