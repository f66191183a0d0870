#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riflab/rif.hpp"

namespace riflab {

enum class Finiteness { Finite, Infinite, Inconclusive };
std::string_view to_string(Finiteness f);

struct HpConfig {
  /// Interior radii, increasing towards 1; geometric in 1 - r.
  std::vector<double> radii = default_radii();
  /// Relative tolerance of the outermost adaptive quadrature level.
  double rel_tol = 1e-7;
  int max_depth = 20;
  /// |growth exponent| below this is reported as inconclusive.
  double growth_tol = 0.02;

  static std::vector<double> default_radii(int first = 3, int last = 10);
};

struct HpEstimate {
  double p = 1.0;
  std::vector<double> radii;
  /// Mean of |d_k phi|^p over r T^n at each radius.
  std::vector<double> means;
  /// Extrapolated r -> 1 limit of the means (the p-th power H^p norm); +inf
  /// when the means grow without bound.
  double extrapolated = 0.0;
  /// beta in mean(r) ~ A + B (1-r)^beta from successive differences,
  /// Aitken-extrapolated when the local values settle; negative means growth.
  double growth_exponent = 0.0;
  double growth_halfwidth = 0.0;
  /// Indices j with means[j+1] < means[j] beyond quadrature error.
  std::vector<std::size_t> monotonicity_violations;
  Finiteness status = Finiteness::Inconclusive;
  std::string method = "hp-quadrature";
};

/// Mean of |d phi / d z_k|^p over the torus of radius r (nested adaptive
/// Gauss-Kronrod, the differentiated variable innermost).
double torus_mean_partial(const RIF& f, std::size_t k, double p, double r,
                          double rel_tol = 1e-7, int max_depth = 20);

HpEstimate hp_norm_partial(const RIF& f, std::size_t k, double p, const HpConfig& cfg = {});

struct OmegaConfig {
  std::vector<double> xs = default_xs();
  std::size_t samples = 100000;
  std::uint64_t seed = 7;
  /// Abort when more than this fraction of slices is degenerate.
  double max_degenerate_fraction = 0.01;
  /// Fit only where the estimate exceeds this many standard errors.
  double min_standard_errors = 5.0;
  /// min delta over the samples above this means delta is bounded away from 0.
  double bounded_delta = 1e-3;

  static std::vector<double> default_xs(double decades = 9.0, int per_decade = 8);
};

struct OmegaProfile {
  std::vector<double> xs;
  /// Normalized measure of {zhat : delta(phi, zhat) < 1/x}.
  std::vector<double> measure;
  std::vector<double> standard_error;
  /// s in mu(Omega_x) ~ x^s over the fitted decade; -inf when bounded away.
  double exponent = 0.0;
  double exponent_halfwidth = 0.0;
  double fit_lo = 0.0, fit_hi = 0.0;
  std::size_t samples = 0;
  std::size_t degenerate = 0;
  double min_delta = 0.0;
  bool bounded_away = false;
  std::string method = "levelset";
};

/// Stratified Monte Carlo over zhat in T^(n-1) using the slice deltas.
OmegaProfile omega_measure(const RIF& f, std::size_t k, const OmegaConfig& cfg = {});

/// H^p threshold 1 - s implied by the level-set integral test.
double levelset_threshold(const OmegaProfile& profile);

/// Finite iff int_1^inf mu(Omega_x) x^(p-2) dx < inf, i.e. p < 1 - s, with the
/// fit half-width as the undecided band.
Finiteness levelset_exponent_test(const OmegaProfile& profile, double p);
/// Same test with an explicit exponent (no uncertainty band).
Finiteness levelset_exponent_test(double exponent, double p, double halfwidth = 0.0);

enum class Endpoint { Open, Closed };
std::string_view to_string(Endpoint e);

/// Finite stand-in for an infinite threshold (bounded derivative).
inline constexpr double kBoundedThreshold = 1e9;

struct ThresholdEntry {
  double value = 1.0;
  Endpoint endpoint = Endpoint::Closed;
  bool bounded = false;
  double halfwidth = 0.0;
  /// Route values (kBoundedThreshold when bounded); NaN when not computed.
  double levelset_value = 0.0;
  double direct_value = 0.0;
  bool inconclusive = false;
  std::string method = "levelset+direct";
};

struct IntegrabilityProfile {
  std::vector<ThresholdEntry> entries;
};

struct ThresholdConfig {
  OmegaConfig omega;
  HpConfig hp = search_hp();
  bool direct = true;
  double p_hi = 4.0;
  /// p tested for bounded derivatives on the direct route.
  double p_bounded = 8.0;
  /// Direct route: secant steps on the growth exponent and their stopping width.
  int secant_steps = 3;
  double secant_width = 0.01;
  double agree_tol = 0.15;

  static HpConfig search_hp();
};

ThresholdEntry hp_threshold(const RIF& f, std::size_t k, const ThresholdConfig& cfg = {});
IntegrabilityProfile integrability_profile(const RIF& f, const ThresholdConfig& cfg = {});

}  // namespace riflab
