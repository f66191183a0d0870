#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "riflab/errors.hpp"
#include "riflab/rif.hpp"
#include "riflab/series.hpp"

using namespace riflab;
using oracle::cplx;

TEST_CASE("1/(2 - z1 - z2) against the binomial closed form") {
  const auto one = MultiPoly::constant(2, 1.0);
  const auto box = expand_ratio(one, fixture::p2(), MultiIndex{30, 30});
  for (int i = 0; i <= 30; ++i)
    for (int j = 0; i + j <= 30; ++j) {
      const double want = oracle::inv_p2(i, j);
      CHECK(std::abs(box.at(MultiIndex{i, j}) - want) <= 1e-12 * want);
    }
}

TEST_CASE("1/(3 - z1 - z2 - z3) against the multinomial closed form") {
  const auto one = MultiPoly::constant(3, 1.0);
  const auto box = expand_ratio(one, fixture::p3(), MultiIndex{12, 12, 12});
  for_each_index(box.orders(), [&](std::span<const int> k, std::size_t lin) {
    const double want = oracle::inv_pn({k[0], k[1], k[2]});
    CHECK(std::abs(box[lin] - want) <= 1e-11 * want);
  });
}

TEST_CASE("phi2 coefficients by convolution") {
  const auto f = build_rif(fixture::p2());
  const auto box = expand_ratio(f.ptilde(), f.p(), MultiIndex{20, 20});
  CHECK(std::abs(box.at(MultiIndex{1, 1}) - 0.5) < 1e-15);
  CHECK(std::abs(box.at(MultiIndex{2, 2}) - 0.125) < 1e-15);
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j)
      CHECK(std::abs(box.at(MultiIndex{i, j}) - oracle::phi2(i, j)) < 1e-14);
  const auto d = diagonal(box);
  CHECK(std::abs(d[2] - 0.125) < 1e-15);
  CHECK(std::abs(d[3] - 0.0625) < 1e-15);
}

TEST_CASE("diagonal of 1/(1 - z1 z2) is all ones") {
  const MultiPoly p(2, {{MultiIndex{0, 0}, 1.0}, {MultiIndex{1, 1}, -1.0}});
  const auto box = expand_ratio(MultiPoly::constant(2, 1.0), p, MultiIndex{15, 15});
  for (cplx c : diagonal(box)) CHECK(std::abs(c - 1.0) < 1e-15);
}

TEST_CASE("polynomial coefficients terminate") {
  const auto q = fixture::example3();
  const auto box = CoeffBox::from_poly(q, MultiIndex{4, 4, 4});
  const auto d = diagonal(box);
  CHECK(std::abs(d[1] - 1.0) < 1e-15);
  for (std::size_t l = 2; l < d.size(); ++l) CHECK(d[l] == cplx(0.0));
}

TEST_CASE("errors") {
  const MultiPoly p(2, {{MultiIndex{1, 0}, 1.0}, {MultiIndex{0, 1}, 1.0}});
  try {
    expand_ratio(MultiPoly::constant(2, 1.0), p, MultiIndex{3, 3});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
  try {
    expand_ratio(MultiPoly::constant(2, 1.0), fixture::p2(), MultiIndex{100, 100}, 1000);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
  }
}

TEST_CASE("storage order visits the last variable fastest") {
  std::vector<std::vector<int>> seen;
  for_each_index(MultiIndex{1, 2}, [&](std::span<const int> k, std::size_t) { seen.push_back({k[0], k[1]}); });
  REQUIRE(seen.size() == 6);
  CHECK(seen[1] == std::vector<int>{0, 1});
  CHECK(seen[3] == std::vector<int>{1, 0});
}
