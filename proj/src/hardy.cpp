#include "riflab/hardy.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "riflab/errors.hpp"
#include "riflab/parallel.hpp"

namespace riflab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TorusIntegrand {
  double p;
  double r;
  double tol;
  int depth;

  double operator()(const DensePoly& num, const DensePoly& den) const {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    if (num.nvars() == 1) {
      const UniPoly un = num.as_uni();
      const UniPoly ud = den.as_uni();
      auto g = [&](double t) {
        const cplx z = std::polar(r, t);
        return std::pow(std::abs(un.eval(z)) / std::norm(ud.eval(z)), p);
      };
      return GK::integrate(g, -kPi, kPi, depth, tol) / (2.0 * kPi);
    }
    auto g = [&](double t) {
      const cplx z = std::polar(r, t);
      return (*this)(num.bind_front(z), den.bind_front(z));
    };
    return GK::integrate(g, -kPi, kPi, depth, tol) / (2.0 * kPi);
  }
};

double growth_from(double d_prev, double d_last, double shrink) {
  if (!(d_prev > 0.0) || !(d_last > 0.0)) return kNaN;
  return std::log(d_last / d_prev) / std::log(shrink);
}

// Local exponents approach their limit geometrically once past the
// preasymptotic range; Aitken is applied only when the last three do.
std::pair<double, double> extrapolate_growth(const std::vector<double>& b) {
  if (b.empty()) return {kNaN, kNaN};
  const double last = b.back();
  if (b.size() < 3) return {last, kNaN};
  const double b0 = b[b.size() - 3], b1 = b[b.size() - 2];
  if (!std::isfinite(b0) || !std::isfinite(b1) || !std::isfinite(last)) return {last, kNaN};
  const double d1 = b1 - b0, d2 = last - b1;
  if (d1 * d2 > 0.0 && std::abs(d2) < 0.9 * std::abs(d1)) {
    const double ext = last - d2 * d2 / (d2 - d1);
    return {ext, std::abs(ext - last)};
  }
  return {last, std::abs(d2)};
}

}  // namespace

std::string_view to_string(Finiteness f) {
  switch (f) {
    case Finiteness::Finite: return "finite";
    case Finiteness::Infinite: return "infinite";
    case Finiteness::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(Endpoint e) { return e == Endpoint::Open ? "open" : "closed"; }

std::vector<double> HpConfig::default_radii(int first, int last) {
  std::vector<double> r;
  for (int j = first; j <= last; ++j) r.push_back(1.0 - std::ldexp(1.0, -j));
  return r;
}

double torus_mean_partial(const RIF& f, std::size_t k, double p, double r, double rel_tol,
                          int max_depth) {
  const std::size_t n = f.nvars();
  require(k < n, ErrorKind::InvalidArgument, "derivative variable out of range");
  require(p > 0.0, ErrorKind::InvalidArgument, "p must be positive");
  require(r >= 0.0 && r < 1.0, ErrorKind::InvalidArgument, "radius must lie in [0, 1)");
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (i != k) order.push_back(i);
  order.push_back(k);
  const DensePoly num(permute_variables(f.derivative_numerator(k), order));
  const DensePoly den(permute_variables(f.p(), order));
  return TorusIntegrand{p, r, rel_tol, max_depth}(num, den);
}

HpEstimate hp_norm_partial(const RIF& f, std::size_t k, double p, const HpConfig& cfg) {
  require(cfg.radii.size() >= 3, ErrorKind::InvalidArgument, "need at least three radii");
  for (std::size_t j = 0; j < cfg.radii.size(); ++j) {
    require(cfg.radii[j] >= 0.0 && cfg.radii[j] < 1.0, ErrorKind::InvalidArgument,
            "radii must lie in [0, 1)");
    require(j == 0 || cfg.radii[j] > cfg.radii[j - 1], ErrorKind::InvalidArgument,
            "radii must increase");
  }

  HpEstimate out;
  out.p = p;
  out.radii = cfg.radii;
  out.means.assign(cfg.radii.size(), 0.0);
  for_each_block(cfg.radii.size(), [&](std::size_t j) {
    out.means[j] = torus_mean_partial(f, k, p, cfg.radii[j], cfg.rel_tol, cfg.max_depth);
  });

  const auto& m = out.means;
  const std::size_t J = m.size();
  const double noise = 100.0 * cfg.rel_tol;
  for (std::size_t j = 0; j + 1 < J; ++j)
    if (m[j + 1] < m[j] - noise * m[j + 1]) out.monotonicity_violations.push_back(j);

  auto eps = [&](std::size_t j) { return 1.0 - cfg.radii[j]; };
  std::vector<double> betas;
  for (std::size_t j = 0; j + 2 < J; ++j)
    betas.push_back(growth_from(m[j + 1] - m[j], m[j + 2] - m[j + 1], eps(j + 1) / eps(j)));
  const auto [beta, beta_hw] = extrapolate_growth(betas);
  out.growth_exponent = beta;
  out.growth_halfwidth = beta_hw;
  const double d_prev = m[J - 2] - m[J - 3];
  const double d_last = m[J - 1] - m[J - 2];

  if (std::abs(d_last) <= noise * std::abs(m[J - 1])) {
    out.status = Finiteness::Finite;
    out.extrapolated = m[J - 1];
  } else if (!std::isfinite(beta)) {
    out.status = Finiteness::Inconclusive;
    out.extrapolated = m[J - 1];
  } else if (beta > cfg.growth_tol) {
    out.status = Finiteness::Finite;
    const double q = d_last / d_prev;
    out.extrapolated = q > 0.0 && q < 1.0 ? m[J - 1] + d_last * q / (1.0 - q) : m[J - 1];
  } else if (beta < -cfg.growth_tol) {
    out.status = Finiteness::Infinite;
    out.extrapolated = std::numeric_limits<double>::infinity();
  } else {
    out.status = Finiteness::Inconclusive;
    out.extrapolated = m[J - 1];
  }
  return out;
}

std::vector<double> OmegaConfig::default_xs(double decades, int per_decade) {
  std::vector<double> xs;
  const int count = static_cast<int>(std::lround(decades * per_decade));
  for (int i = 0; i <= count; ++i) xs.push_back(std::pow(10.0, static_cast<double>(i) / per_decade));
  return xs;
}

OmegaProfile omega_measure(const RIF& f, std::size_t k, const OmegaConfig& cfg) {
  const std::size_t n = f.nvars();
  require(n >= 2, ErrorKind::InvalidArgument, "level sets need at least two variables");
  require(k < n, ErrorKind::InvalidArgument, "slice variable out of range");
  require(cfg.samples >= 100, ErrorKind::InvalidArgument, "too few samples");
  require(!cfg.xs.empty() && std::is_sorted(cfg.xs.begin(), cfg.xs.end()) && cfg.xs.front() >= 1.0,
          ErrorKind::InvalidArgument, "x grid must be increasing and start at >= 1");

  // Latin hypercube over T^(n-1): one jittered stratum per sample and dimension.
  const std::size_t m = cfg.samples;
  const std::size_t dims = n - 1;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> theta(m * dims);
  std::vector<std::size_t> perm(m);
  for (std::size_t d = 0; d < dims; ++d) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < m; ++i)
      theta[i * dims + d] = 2.0 * kPi * ((static_cast<double>(perm[i]) + u(rng)) / m) - kPi;
  }

  constexpr double kNone = std::numeric_limits<double>::infinity();
  constexpr double kDegenerate = -1.0;
  std::vector<double> delta(m, kNone);
  constexpr std::size_t kBlocks = 64;
  for_each_block(kBlocks, [&](std::size_t b) {
    const BlockRange br = block_range(m, kBlocks, b);
    std::vector<cplx> zhat(dims);
    for (std::size_t i = br.begin; i < br.end; ++i) {
      for (std::size_t d = 0; d < dims; ++d) zhat[d] = std::polar(1.0, theta[i * dims + d]);
      try {
        const BlaschkeSlice s = slice_blaschke(f, k, zhat);
        if (s.degree_defect != 0)
          delta[i] = kDegenerate;
        else if (s.delta)
          delta[i] = *s.delta;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SliceVanishes) throw;
        delta[i] = kDegenerate;
      }
    }
  });

  OmegaProfile out;
  out.samples = m;
  std::vector<double> good;
  good.reserve(m);
  for (double d : delta) {
    if (d == kDegenerate)
      ++out.degenerate;
    else
      good.push_back(d);
  }
  if (static_cast<double>(out.degenerate) > cfg.max_degenerate_fraction * static_cast<double>(m))
    fail(ErrorKind::NumericalFailure,
         std::to_string(out.degenerate) + " of " + std::to_string(m) +
             " slices are degenerate (numerator vanishes or zeros reach the circle)");
  std::sort(good.begin(), good.end());
  out.min_delta = good.empty() ? kNone : good.front();

  const double total = static_cast<double>(good.size());
  out.xs = cfg.xs;
  for (double x : cfg.xs) {
    const auto below = std::lower_bound(good.begin(), good.end(), 1.0 / x) - good.begin();
    const double mu = static_cast<double>(below) / total;
    out.measure.push_back(mu);
    out.standard_error.push_back(std::sqrt(mu * (1.0 - mu) / total));
  }

  if (out.min_delta >= cfg.bounded_delta) {
    out.bounded_away = true;
    out.exponent = -std::numeric_limits<double>::infinity();
    return out;
  }

  std::ptrdiff_t hi = -1;
  for (std::size_t i = 0; i < out.xs.size(); ++i)
    if (out.measure[i] > 0.0 && out.measure[i] > cfg.min_standard_errors * out.standard_error[i])
      hi = static_cast<std::ptrdiff_t>(i);
  if (hi < 0)
    fail(ErrorKind::NumericalFailure, "level-set measure never exceeds its standard error");
  const double x_hi = out.xs[static_cast<std::size_t>(hi)];
  std::vector<double> lx, lm;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(hi); ++i)
    if (out.xs[i] >= x_hi / 10.0 * (1.0 - 1e-12) && out.measure[i] > 0.0) {
      lx.push_back(std::log(out.xs[i]));
      lm.push_back(std::log(out.measure[i]));
    }
  if (lx.size() < 3)
    fail(ErrorKind::NumericalFailure, "fewer than three usable points in the fitted decade");

  // Least squares slope of log mu against log x.
  const double N = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / N;
  const double my = std::accumulate(lm.begin(), lm.end(), 0.0) / N;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (lm[i] - my);
  }
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double res = lm[i] - (my + slope * (lx[i] - mx));
    rss += res * res;
  }
  const double se = lx.size() > 2 ? std::sqrt(rss / (N - 2.0) / sxx) : 0.0;
  out.exponent = slope;
  out.exponent_halfwidth = std::max(2.0 * se, 1e-3);
  out.fit_lo = std::exp(lx.front());
  out.fit_hi = std::exp(lx.back());
  return out;
}

double levelset_threshold(const OmegaProfile& profile) {
  return profile.bounded_away ? kBoundedThreshold : 1.0 - profile.exponent;
}

Finiteness levelset_exponent_test(double exponent, double p, double halfwidth) {
  if (std::isinf(exponent) && exponent < 0.0) return Finiteness::Finite;
  const double t = 1.0 - exponent;
  if (p < t - halfwidth) return Finiteness::Finite;
  if (p > t + halfwidth) return Finiteness::Infinite;
  // Exactly at the threshold the integral diverges logarithmically.
  if (halfwidth == 0.0) return Finiteness::Infinite;
  return Finiteness::Inconclusive;
}

Finiteness levelset_exponent_test(const OmegaProfile& profile, double p) {
  if (profile.bounded_away) return Finiteness::Finite;
  return levelset_exponent_test(profile.exponent, p, profile.exponent_halfwidth);
}

HpConfig ThresholdConfig::search_hp() {
  HpConfig c;
  c.radii = HpConfig::default_radii(3, 12);
  c.rel_tol = 1e-6;
  return c;
}

ThresholdEntry hp_threshold(const RIF& f, std::size_t k, const ThresholdConfig& cfg) {
  ThresholdEntry e;
  const OmegaProfile prof = omega_measure(f, k, cfg.omega);
  e.levelset_value = levelset_threshold(prof);
  e.halfwidth = prof.bounded_away ? 0.0 : prof.exponent_halfwidth;
  e.direct_value = kNaN;
  e.method = cfg.direct ? "levelset+direct" : "levelset";

  if (cfg.direct) {
    auto probe = [&](double p) { return hp_norm_partial(f, k, p, cfg.hp); };
    if (prof.bounded_away) {
      e.direct_value = probe(cfg.p_bounded).status == Finiteness::Finite ? kBoundedThreshold : kNaN;
    } else {
      // The growth exponent of the means is t - p asymptotically: secant search
      // for its zero, started at the level-set value.
      double p0 = std::clamp(e.levelset_value, 1.0, cfg.p_hi);
      HpEstimate h0 = probe(p0);
      double t = p0 + h0.growth_exponent;
      double hw = h0.growth_halfwidth;
      for (int it = 0; it < cfg.secant_steps && std::isfinite(t); ++it) {
        const double p1 = std::clamp(t, 1.0, cfg.p_hi);
        if (std::abs(p1 - p0) < cfg.secant_width) break;
        const HpEstimate h1 = probe(p1);
        const double slope = (h1.growth_exponent - h0.growth_exponent) / (p1 - p0);
        t = slope < 0.0 ? p1 - h1.growth_exponent / slope : p1 + h1.growth_exponent;
        hw = h1.growth_halfwidth;
        p0 = p1;
        h0 = h1;
      }
      e.direct_value = t;
      if (std::isfinite(hw)) e.halfwidth = std::max(e.halfwidth, std::min(hw, cfg.agree_tol));
    }
  }

  e.bounded = prof.bounded_away;
  e.value = e.levelset_value;
  if (cfg.direct) {
    const bool both_bounded = e.direct_value == kBoundedThreshold && e.bounded;
    const bool agree = both_bounded || (!e.bounded && std::isfinite(e.direct_value) &&
                                        e.direct_value != kBoundedThreshold &&
                                        std::abs(e.direct_value - e.levelset_value) <= cfg.agree_tol);
    e.inconclusive = !agree;
  }
  if (e.bounded) {
    e.endpoint = Endpoint::Closed;
    e.halfwidth = 0.0;
  } else if (e.value <= 1.0 + e.halfwidth) {
    // H^1 always holds for a partial derivative of a rational inner function.
    e.value = 1.0;
    e.endpoint = Endpoint::Closed;
  } else {
    e.endpoint = Endpoint::Open;
  }
  return e;
}

IntegrabilityProfile integrability_profile(const RIF& f, const ThresholdConfig& cfg) {
  IntegrabilityProfile out;
  for (std::size_t k = 0; k < f.nvars(); ++k) out.entries.push_back(hp_threshold(f, k, cfg));
  return out;
}

}  // namespace riflab
