#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "../oracles.hpp"
#include "riflab/blaschke.hpp"
#include "riflab/errors.hpp"

using namespace riflab;
using oracle::cplx;

TEST_CASE("single factor coefficients") {
  for (cplx a : {cplx(0.9), cplx(0.3, -0.4), cplx(-0.99)}) {
    const BlaschkeProduct b({a});
    const auto got = b.taylor(50);
    const auto want = oracle::blaschke_factor_coeffs(a, 50);
    for (int k = 0; k <= 50; ++k) CHECK(std::abs(got[k] - want[k]) < 1e-14);
  }
}

TEST_CASE("product coefficients against interpolation") {
  const BlaschkeProduct b({cplx(0.5, 0.2), cplx(-0.3), cplx(0.1, -0.7)}, std::polar(1.0, 0.4));
  const auto got = b.taylor(20);
  const auto want = oracle::interpolate_coeffs([&](cplx z) { return b.eval(z); }, 20, 256, 0.5);
  for (int k = 0; k <= 20; ++k) CHECK(std::abs(got[k] - want[k]) < 1e-10);
}

TEST_CASE("D_p norms") {
  const BlaschkeProduct z({cplx(0.0)});
  for (double p : {-1.0, 0.0, 1.5, 2.5}) CHECK(d_alpha_norm_1d(z, p, 64).value == doctest::Approx(std::pow(2.0, p)));

  const double a = 0.9;
  double want = a * a;
  for (int k = 1; k < 5000; ++k) want += (1 - a * a) * (1 - a * a) * (1 + k) * std::pow(a, 2 * (k - 1));
  CHECK(d_alpha_norm_1d(BlaschkeProduct({cplx(a)}), 1.0, 2000).value == doctest::Approx(want).epsilon(1e-10));

  CHECK(d_alpha_norm_1d(BlaschkeProduct({cplx(0.5), cplx(-0.5)}), 0.0, 200).value ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("short truncations are refused") {
  try {
    d_alpha_norm_1d(BlaschkeProduct({cplx(0.999)}), 1.5, 100);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Truncation);
  }
}

TEST_CASE("onedim ratio") {
  CHECK(onedim_ratio(BlaschkeProduct({cplx(0.0)}), 1.5) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-8));
  double lo = INFINITY, hi = 0.0;
  for (int j = 1; j <= 4; ++j) {
    const double r = onedim_ratio(BlaschkeProduct({cplx(1.0 - std::pow(10.0, -j))}), 1.5);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo < 10.0);
  CHECK(auto_truncation(BlaschkeProduct({cplx(0.99)})) == 4000);
}
