// Independent reference computations for the tests. Nothing here calls into
// the library except for the plain data types.
#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "riflab/polycore.hpp"

namespace oracle {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Coefficient of z1^k1 z2^k2 in 1/(2 - z1 - z2).
inline double inv_p2(int k1, int k2) {
  if (k1 < 0 || k2 < 0) return 0.0;
  return binomial(k1 + k2, k1) * std::ldexp(1.0, -(k1 + k2 + 1));
}

/// Coefficient of (2 z1 z2 - z1 - z2) / (2 - z1 - z2), by convolution.
inline double phi2(int k1, int k2) {
  return 2.0 * inv_p2(k1 - 1, k2 - 1) - inv_p2(k1 - 1, k2) - inv_p2(k1, k2 - 1);
}

/// Coefficient of 1/(n - z1 - ... - zn) at k: multinomial(k) n^-(|k|+1).
inline double inv_pn(const std::vector<int>& k) {
  const int n = static_cast<int>(k.size());
  int total = 0;
  double lg = 0.0;
  for (int ki : k) {
    if (ki < 0) return 0.0;
    total += ki;
    lg -= std::lgamma(ki + 1.0);
  }
  lg += std::lgamma(total + 1.0) - (total + 1) * std::log(static_cast<double>(n));
  return std::exp(lg);
}

/// sum c_a z^a with std::pow per factor.
inline cplx eval_terms(const std::map<std::vector<int>, cplx>& terms, const std::vector<cplx>& z) {
  cplx s = 0.0;
  for (const auto& [a, c] : terms) {
    cplx t = c;
    for (std::size_t i = 0; i < a.size(); ++i) t *= std::pow(z[i], a[i]);
    s += t;
  }
  return s;
}

inline std::map<std::vector<int>, cplx> terms_of(const riflab::MultiPoly& p) {
  std::map<std::vector<int>, cplx> out;
  for (const auto& [e, c] : p.terms()) out[std::vector<int>(e.values().begin(), e.values().end())] = c;
  return out;
}

/// Single Blaschke factor (z - a)/(1 - conj(a) z): -a, then (|a|^2 - 1)(-conj a)^... in closed form.
inline std::vector<cplx> blaschke_factor_coeffs(cplx a, int order) {
  std::vector<cplx> c(order + 1);
  c[0] = -a;
  for (int k = 1; k <= order; ++k) c[k] = (1.0 - std::norm(a)) * std::pow(std::conj(a), k - 1);
  return c;
}

/// Taylor coefficients 0..order of f from samples on the circle |z| = rho
/// with m points (plain DFT).
template <typename F>
std::vector<cplx> interpolate_coeffs(F f, int order, int m, double rho) {
  std::vector<cplx> vals(m);
  for (int j = 0; j < m; ++j) vals[j] = f(std::polar(rho, 2.0 * pi * j / m));
  std::vector<cplx> c(order + 1);
  for (int k = 0; k <= order; ++k) {
    cplx s = 0.0;
    for (int j = 0; j < m; ++j) s += vals[j] * std::polar(1.0, -2.0 * pi * j * k / m);
    c[k] = s / static_cast<double>(m) / std::pow(rho, k);
  }
  return c;
}

/// delta(phi_2, e^{i theta}) for the slice in either variable.
inline double phi2_delta(double theta) { return 1.0 - 1.0 / std::sqrt(5.0 - 4.0 * std::cos(theta)); }

/// Brute-force sum over k of prod (1+k_i)^w_i |a(k)|^2 on [0,N]^2 from a
/// coefficient function.
template <typename A>
double weighted_sum_2d(A a, int N, double w1, double w2) {
  double s = 0.0;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      const double c = a(i, j);
      s += std::pow(1.0 + i, w1) * std::pow(1.0 + j, w2) * c * c;
    }
  return s;
}

/// Random polynomial with integer-free complex coefficients.
inline riflab::MultiPoly random_poly(std::mt19937_64& rng, std::size_t n, int max_terms, int max_deg) {
  std::uniform_int_distribution<int> nt(1, max_terms);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::normal_distribution<double> g;
  riflab::MultiPoly::TermMap terms;
  const int count = nt(rng);
  for (int t = 0; t < count; ++t) {
    std::vector<int> e(n);
    for (auto& x : e) x = deg(rng);
    terms[riflab::MultiIndex(e)] = cplx(g(rng), g(rng));
  }
  return riflab::MultiPoly(n, std::move(terms));
}

/// U_{n-1} of the telescoping chain in closed form: 2(n-2) everywhere except
/// 2(n-1) in the last slot, minus c n.
inline std::vector<double> chain_last_u(int n) {
  const double c = 2.0 * (n - 1) / n;
  std::vector<double> u(n, 2.0 * (n - 2) - c * n);
  u[n - 1] = 2.0 * (n - 1) - c * n;
  return u;
}

}  // namespace oracle
