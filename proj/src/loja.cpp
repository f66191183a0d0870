#include "riflab/loja.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>

#include "riflab/errors.hpp"
#include "riflab/parallel.hpp"

namespace riflab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = 1e-300;

using Objective = std::function<double(const std::vector<double>&)>;

double gsl_trampoline(const gsl_vector* v, void* params) {
  const auto& f = *static_cast<const Objective*>(params);
  std::vector<double> x(v->size);
  for (std::size_t i = 0; i < v->size; ++i) x[i] = gsl_vector_get(v, i);
  return f(x);
}

// Nelder-Mead (GSL nmsimplex2) from x0; returns the best point found.
std::pair<std::vector<double>, double> nelder_mead(const Objective& f, std::vector<double> x0,
                                                   double step, int max_iter = 400) {
  const std::size_t dim = x0.size();
  gsl_multimin_function fn{&gsl_trampoline, dim, const_cast<Objective*>(&f)};
  gsl_vector* x = gsl_vector_alloc(dim);
  gsl_vector* ss = gsl_vector_alloc(dim);
  for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x, i, x0[i]);
  gsl_vector_set_all(ss, step);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  gsl_multimin_fminimizer_set(s, &fn, x, ss);
  for (int it = 0; it < max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-7) == GSL_SUCCESS) break;
  }
  std::vector<double> best(dim);
  for (std::size_t i = 0; i < dim; ++i) best[i] = gsl_vector_get(s->x, i);
  const double val = s->fval;
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(ss);
  gsl_vector_free(x);
  return {best, val};
}

// p(point_j (1 - u_j)) as a polynomial in u, without its constant term (the
// residual at the declared zero). Small |u| keeps full relative accuracy where
// the expanded form of p would cancel.
MultiPoly recentre(const MultiPoly& p, std::span<const cplx> point) {
  const std::size_t n = p.nvars();
  std::vector<MultiPoly> lin;
  for (std::size_t j = 0; j < n; ++j)
    lin.push_back(MultiPoly::constant(n, point[j]) - point[j] * MultiPoly::variable(n, j));
  MultiPoly q(n);
  for (const auto& [a, c] : p.terms()) {
    MultiPoly t = MultiPoly::constant(n, c);
    for (std::size_t j = 0; j < n; ++j)
      for (int e = 0; e < a[j]; ++e) t = t * lin[j];
    q = q + t;
  }
  MultiPoly::TermMap terms = q.terms();
  terms.erase(MultiIndex::zeros(n));
  return MultiPoly(n, std::move(terms));
}

// Point u of the approach region at distance rho from the origin (w = 1 - u),
// encoded by direction x (n entries) and angle parameters y (n entries).
struct Approach {
  std::size_t n;
  double rho;

  bool map(const std::vector<double>& xy, std::vector<cplx>& u) const {
    double norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) norm += xy[j] * xy[j];
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) return false;
    for (std::size_t j = 0; j < n; ++j) {
      const double r = rho * std::abs(xy[j]) / norm;
      const double v = std::acos(std::min(1.0, r / 2.0)) * std::sin(xy[n + j]);
      u[j] = std::polar(r, v);
    }
    return true;
  }
};

struct BinResult {
  double min_log = std::numeric_limits<double>::infinity();
  bool interior_zero = false;
};

double log_modulus(const MultiPoly& q, const std::vector<cplx>& u) {
  return std::log(std::abs(q.eval(u)) + kTiny);
}

BinResult probe_bin(const MultiPoly& q, double rho, const LojaConfig& cfg, std::uint64_t stream) {
  const std::size_t n = q.nvars();
  std::seed_seq seq{cfg.seed, stream};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Approach ap{n, rho};

  BinResult out;
  std::vector<std::pair<double, std::vector<double>>> best;
  std::vector<cplx> u(n);
  std::vector<double> xy(2 * n);
  for (std::size_t s = 0; s < cfg.samples_per_bin; ++s) {
    for (std::size_t j = 0; j < n; ++j) xy[j] = std::abs(gauss(rng)) + 1e-12;
    // Angles pushed towards the tangential edge |v| = arccos(r/2).
    for (std::size_t j = 0; j < n; ++j) {
      const double t = unif(rng);
      const double frac = 1.0 - t * t * t;
      xy[n + j] = (unif(rng) < 0.5 ? -1.0 : 1.0) * std::asin(std::min(1.0, frac));
    }
    ap.map(xy, u);
    const double lm = log_modulus(q, u);
    double wmax = 0.0;
    for (const cplx& uj : u) wmax = std::max(wmax, std::abs(1.0 - uj));
    if (lm < std::log(1e-15) && wmax < 1.0 - rho / 10.0) out.interior_zero = true;
    best.emplace_back(lm, xy);
    if (best.size() > 4 * std::max<std::size_t>(cfg.polish, 1)) {
      std::nth_element(best.begin(), best.begin() + static_cast<std::ptrdiff_t>(cfg.polish), best.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      best.resize(std::max<std::size_t>(cfg.polish, 1));
    }
  }
  std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& b : best) out.min_log = std::min(out.min_log, b.first);

  const Objective f = [&](const std::vector<double>& v) {
    std::vector<cplx> uu(n);
    if (!ap.map(v, uu)) return 1e300;
    return log_modulus(q, uu);
  };
  for (std::size_t i = 0; i < std::min(cfg.polish, best.size()); ++i)
    out.min_log = std::min(out.min_log, nelder_mead(f, best[i].second, 0.2).second);
  return out;
}

double isolation_probe(const MultiPoly& p, std::span<const cplx> point, const LojaConfig& cfg) {
  const std::size_t n = p.nvars();
  std::mt19937_64 rng(cfg.seed ^ 0x5bd1e995ULL);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  auto outside = [&](const std::vector<double>& th, std::vector<cplx>& z) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      z[j] = std::polar(1.0, th[j]);
      d2 += std::norm(z[j] - point[j]);
    }
    return std::sqrt(d2) >= cfg.neighborhood;
  };
  std::vector<std::pair<double, std::vector<double>>> cand;
  std::vector<cplx> z(n);
  std::vector<double> th(n);
  for (std::size_t s = 0; s < cfg.torus_samples; ++s) {
    for (auto& t : th) t = ang(rng);
    if (!outside(th, z)) continue;
    cand.emplace_back(std::abs(p.eval(z)), th);
  }
  if (cand.empty()) return std::numeric_limits<double>::infinity();
  const std::size_t keep = std::min<std::size_t>(8, cand.size());
  std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(keep), cand.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  double best = cand.front().first;
  const Objective f = [&](const std::vector<double>& v) {
    std::vector<cplx> zz(n);
    if (!outside(v, zz)) return 1e300;
    return std::abs(p.eval(zz));
  };
  for (std::size_t i = 0; i < keep; ++i) best = std::min(best, nelder_mead(f, cand[i].second, 0.05).second);
  return best;
}

}  // namespace

LojaEstimate loja_probe(const MultiPoly& p, std::span<const cplx> point, const LojaConfig& cfg) {
  const std::size_t n = p.nvars();
  require(point.size() == n, ErrorKind::DimensionMismatch, "point length does not match variables");
  for (const cplx& z : point)
    require(std::abs(std::abs(z) - 1.0) < 1e-9, ErrorKind::InvalidArgument,
            "singular point must lie on the torus");
  require(cfg.rho_max > cfg.rho_min && cfg.rho_min > 0.0 && cfg.rho_max < 1.0,
          ErrorKind::InvalidArgument, "need 0 < rho_min < rho_max < 1");
  require(cfg.bins_per_decade >= 2, ErrorKind::InvalidArgument, "need >= 2 bins per decade");
  const double at = std::abs(p.eval(point));
  require(at <= cfg.zero_tol, ErrorKind::InvalidArgument,
          "p does not vanish at the given point (|p| = " + std::to_string(at) + ")");

  LojaEstimate est;
  est.point.assign(point.begin(), point.end());
  est.isolation_min = isolation_probe(p, point, cfg);
  if (est.isolation_min < cfg.isolation_floor)
    fail(ErrorKind::InvalidArgument,
         "p has another zero on the torus outside the neighborhood of the point; only a single "
         "boundary zero is supported");

  const double decades = std::log10(cfg.rho_max / cfg.rho_min);
  const int bins = static_cast<int>(std::lround(decades * cfg.bins_per_decade)) + 1;
  std::vector<BinResult> res(static_cast<std::size_t>(bins));
  std::vector<double> rhos(res.size());
  for (int b = 0; b < bins; ++b)
    rhos[static_cast<std::size_t>(b)] =
        cfg.rho_max * std::pow(10.0, -static_cast<double>(b) / cfg.bins_per_decade);
  const MultiPoly q = recentre(p, point);
  for_each_block(res.size(), [&](std::size_t b) {
    res[b] = probe_bin(q, rhos[b], cfg, static_cast<std::uint64_t>(b));
  });

  for (std::size_t b = 0; b < res.size(); ++b) {
    if (res[b].interior_zero)
      fail(ErrorKind::InteriorZero, "p vanishes inside the polydisk near the point");
    est.envelope.push_back({std::log(rhos[b]), res[b].min_log, cfg.samples_per_bin});
    est.samples += cfg.samples_per_bin;
  }

  // Fit over the smallest fit_decades of distance.
  const double lo = std::log(rhos.back());
  const double hi = lo + cfg.fit_decades * std::log(10.0) + 1e-9;
  auto fit = [&](double a, double b) {
    std::vector<double> xs, ys;
    for (const auto& e : est.envelope)
      if (e.log_dist >= a - 1e-9 && e.log_dist <= b) {
        xs.push_back(e.log_dist);
        ys.push_back(e.log_min_modulus);
      }
    require(xs.size() >= 3, ErrorKind::NumericalFailure, "too few envelope bins in the fit window");
    const double N = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / N;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / N;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - my - slope * (xs[i] - mx);
      rss += r * r;
    }
    const double se = N > 2 ? std::sqrt(rss / (N - 2.0) / sxx) : 0.0;
    return std::tuple{slope, my - slope * mx, se};
  };
  const auto [slope, intercept, se] = fit(lo, hi);
  const double mid = lo + 0.5 * (hi - lo);
  const double s_near = std::get<0>(fit(lo, mid));
  const double s_far = std::get<0>(fit(mid, hi));
  est.q_hat = slope;
  est.C_hat = std::exp(intercept);
  est.q_halfwidth = std::max({2.0 * se, 0.5 * std::abs(s_near - s_far), 5e-3});
  est.fit_lo = std::exp(lo);
  est.fit_hi = std::exp(std::min(hi, std::log(rhos.front())));
  require(est.q_hat > 0.0, ErrorKind::NumericalFailure, "envelope does not decay towards the point");
  return est;
}

Rational lojasiewicz_threshold(Rational q, int n) {
  require(n >= 1 && q > 0, ErrorKind::InvalidArgument, "need q > 0 and n >= 1");
  const Rational cap = std::min(Rational(0), Rational(1) - Rational(2) * q / n);
  return cap + Rational(2, n);
}

Rational snap_exponent(double x, double halfwidth, int max_den) {
  require(std::isfinite(x) && max_den >= 1, ErrorKind::InvalidArgument, "cannot snap a non-finite value");
  Rational best;
  double err = std::numeric_limits<double>::infinity();
  for (int d = 1; d <= max_den; ++d) {
    const long long num = std::llround(x * d);
    const double e = std::abs(x - static_cast<double>(num) / d);
    if (e < err - 1e-15) {
      err = e;
      best = Rational(num, d);
    }
  }
  if (err > halfwidth)
    fail(ErrorKind::NumericalFailure, "no simple fraction within the confidence half-width");
  return best;
}

LojaVerdict lojasiewicz_verdict(const LojaEstimate& est, int n, double alpha) {
  require(std::isfinite(alpha) && alpha < 0.0, ErrorKind::InvalidArgument,
          "the boundary-zero theorem needs alpha < 0");
  require(n >= 1 && static_cast<std::size_t>(n) == est.point.size(), ErrorKind::DimensionMismatch,
          "n does not match the estimate");
  require(est.q_hat > 0.0, ErrorKind::InvalidArgument, "invalid estimate");
  LojaVerdict v;
  v.bound = (1.0 - alpha) * n / 2.0;
  v.passes = est.q_hat + est.q_halfwidth < v.bound;
  Implication& imp = v.implication;
  imp.claimed_exponent = alpha + 2.0 / n;
  imp.basis = v.passes ? "hypothesis-verified" : "hypothesis-refuted";
  imp.claim = "p~/p in D_" + std::to_string(imp.claimed_exponent);
  imp.provenance.push_back(est.method + ": q = " + std::to_string(est.q_hat) + " +- " +
                           std::to_string(est.q_halfwidth) + " against bound " +
                           std::to_string(v.bound));
  imp.provenance.push_back("theorem: single boundary zero with |p| >= C dist^q, q < (1-alpha)n/2");
  return v;
}

}  // namespace riflab
