#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "riflab/embeddings.hpp"
#include "riflab/polycore.hpp"

namespace riflab {

struct LojaConfig {
  /// Distances from the singular point, geometric from rho_max down to rho_min.
  double rho_max = 1e-1;
  double rho_min = 1e-4;
  int bins_per_decade = 4;
  std::size_t samples_per_bin = 1500;
  /// Best raw samples per bin refined by Nelder-Mead at fixed distance.
  std::size_t polish = 4;
  std::uint64_t seed = 11;
  /// |p(point)| allowed at the declared zero.
  double zero_tol = 1e-8;
  /// Envelope fit window, in decades above rho_min.
  double fit_decades = 2.0;
  /// Single-zero probe: torus samples outside the neighborhood must keep |p|
  /// above isolation_floor.
  std::size_t torus_samples = 20000;
  double neighborhood = 0.05;
  double isolation_floor = 1e-7;
};

struct EnvelopeBin {
  double log_dist;
  double log_min_modulus;
  std::size_t samples;
};

struct LojaEstimate {
  std::vector<cplx> point;
  double q_hat = 0.0;
  double q_halfwidth = 0.0;
  double C_hat = 0.0;
  std::size_t samples = 0;
  std::vector<EnvelopeBin> envelope;
  double fit_lo = 0.0, fit_hi = 0.0;
  /// Smallest |p| found on the torus outside the neighborhood.
  double isolation_min = 0.0;
  std::string method = "envelope-fit";
};

/// Lower envelope of log|p| against log dist(z, point) over the restricted
/// approach region z_j = point_j (1 - r_j e^{i v_j}), |v_j| <= arccos(r_j / 2).
LojaEstimate loja_probe(const MultiPoly& p, std::span<const cplx> point, const LojaConfig& cfg = {});

/// sup of the claimed exponents alpha + 2/n over alpha < min(0, 1 - 2q/n).
Rational lojasiewicz_threshold(Rational q, int n);

/// Nearest fraction with denominator <= max_den; throws NumericalFailure when
/// none lies within halfwidth of x.
Rational snap_exponent(double x, double halfwidth, int max_den = 4);

/// Passes iff q_hat + halfwidth < (1 - alpha) n / 2; on pass the claim is
/// p~/p in D_(alpha + 2/n).
struct LojaVerdict {
  bool passes = false;
  double bound = 0.0;  // (1 - alpha) n / 2
  Implication implication;
};
LojaVerdict lojasiewicz_verdict(const LojaEstimate& est, int n, double alpha);

}  // namespace riflab
