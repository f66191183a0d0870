#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "riflab/errors.hpp"
#include "riflab/polycore.hpp"

using namespace riflab;
using oracle::cplx;

namespace {

bool close(cplx a, cplx b, double tol = 1e-13) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

bool same_poly(const MultiPoly& a, const MultiPoly& b, double tol = 1e-13) {
  if (a.nvars() != b.nvars()) return false;
  for (const auto& [e, c] : a.terms())
    if (!close(c, b.coeff(e), tol)) return false;
  for (const auto& [e, c] : b.terms())
    if (!close(c, a.coeff(e), tol)) return false;
  return true;
}

}  // namespace

TEST_CASE("evaluation matches the naive sum") {
  const auto p = fixture::p2();
  const std::vector<cplx> one{1.0, 1.0}, zero{0.0, 0.0};
  CHECK(std::abs(p.eval(one)) == doctest::Approx(0.0));
  CHECK(p.eval(zero) == cplx(2.0));
  const auto m = MultiPoly::monomial(MultiIndex{1, 1});
  const std::vector<cplx> z{2.0, 3.0};
  CHECK(m.eval(z) == cplx(6.0));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int t = 0; t < 50; ++t) {
    const auto q = oracle::random_poly(rng, 3, 8, 4);
    const std::vector<cplx> w{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    CHECK(close(q.eval(w), oracle::eval_terms(oracle::terms_of(q), w), 1e-12));
  }
}

TEST_CASE("evaluation rejects a wrong point length") {
  const std::vector<cplx> z{1.0};
  CHECK_THROWS_AS(fixture::p2().eval(z), Error);
}

TEST_CASE("reflection examples") {
  const auto r = reflect(fixture::p2());
  const MultiPoly expect(2, {{MultiIndex{1, 1}, 2.0}, {MultiIndex{1, 0}, -1.0}, {MultiIndex{0, 1}, -1.0}});
  CHECK(same_poly(r, expect));

  const auto c = MultiPoly::constant(2, cplx(1.0, 2.0));
  CHECK(same_poly(reflect(c, MultiIndex{0, 0}), MultiPoly::constant(2, cplx(1.0, -2.0))));

  const auto r3 = reflect(fixture::example3());
  const MultiPoly want(3, {{MultiIndex{0, 0, 0}, 1.0},
                           {MultiIndex{1, 0, 0}, -0.5},
                           {MultiIndex{0, 1, 0}, -0.5},
                           {MultiIndex{1, 0, 1}, -1.0},
                           {MultiIndex{0, 1, 1}, -1.0},
                           {MultiIndex{1, 1, 1}, 2.0}});
  CHECK(same_poly(r3, want));
}

TEST_CASE("reflection needs a dominating degree") {
  CHECK_THROWS_AS(reflect(fixture::p2(), MultiIndex{0, 1}), Error);
}

TEST_CASE("reflection is an involution") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto p = oracle::random_poly(rng, 1 + t % 4, 12, 5);
    CHECK(same_poly(reflect(reflect(p, p.multidegree()), p.multidegree()), p, 1e-12));
  }
}

TEST_CASE("partial derivatives") {
  CHECK(same_poly(partial_derivative(fixture::p2(), 0), MultiPoly::constant(2, -1.0)));
  const auto m = MultiPoly::monomial(MultiIndex{2, 1});
  CHECK(same_poly(partial_derivative(m, 0), MultiPoly::monomial(MultiIndex{1, 1}, 2.0)));
  const MultiPoly want(3, {{MultiIndex{1, 1, 0}, 1.0}, {MultiIndex{1, 0, 0}, -0.5}, {MultiIndex{0, 1, 0}, -0.5}});
  CHECK(same_poly(partial_derivative(fixture::example3(), 2), want));
  CHECK_THROWS_AS(partial_derivative(fixture::p2(), 2), Error);
}

TEST_CASE("slices") {
  const std::vector<cplx> one{1.0}, minus{-1.0};
  auto s = slice(fixture::p2(), 1, one);
  REQUIRE(s.degree() == 1);
  CHECK(close(s.coeffs()[0], 1.0));
  CHECK(close(s.coeffs()[1], -1.0));

  const auto pt = reflect(fixture::p2());
  s = slice(pt, 1, minus);
  CHECK(close(s.coeffs()[0], 1.0));
  CHECK(close(s.coeffs()[1], -3.0));

  s = slice(pt, 1, one);
  REQUIRE(s.degree() == 1);
  CHECK(close(s.coeffs()[0], -1.0));
  CHECK(close(s.coeffs()[1], 1.0));

  const std::vector<cplx> two{1.0, 2.0};
  CHECK_THROWS_AS(slice(fixture::p2(), 1, two), Error);
}

TEST_CASE("roots") {
  auto r = roots(UniPoly({-1.0, 0.0, 1.0}));
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(close(r[0], -1.0, 1e-12));
  CHECK(close(r[1], 1.0, 1e-12));
  r = roots(UniPoly({2.0, -1.0}));
  CHECK(close(r[0], 2.0, 1e-12));
  CHECK_THROWS_AS(roots(UniPoly{}), Error);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    const UniPoly u({{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, 1.0});
    for (cplx z : roots(u)) CHECK(std::abs(u.eval(z)) < 1e-10);
  }
}

TEST_CASE("dense evaluation agrees with sparse") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const auto p = oracle::random_poly(rng, 3, 10, 3);
    const std::vector<cplx> z{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    const DensePoly d(p);
    CHECK(close(d.eval(z), p.eval(z), 1e-12));
    const auto tail = d.bind_front(z[0]).bind_front(z[1]).as_uni();
    CHECK(close(tail.eval(z[2]), p.eval(z), 1e-12));
  }
}

TEST_CASE("variable permutation") {
  const auto p = fixture::example3();
  const std::vector<std::size_t> order{2, 0, 1};
  const auto q = permute_variables(p, order);
  const std::vector<cplx> z{0.1, 0.2, 0.3}, zq{0.3, 0.1, 0.2};
  CHECK(close(q.eval(zq), p.eval(z)));
}
