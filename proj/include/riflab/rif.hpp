#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "riflab/polycore.hpp"

namespace riflab {

/// Sampling parameters for the stability and unimodularity probes.
struct ProbeConfig {
  /// Interior radii used by the min-modulus tensor grid.
  std::vector<double> radii = {0.0, 0.25, 0.5, 0.75, 0.9, 0.99};
  int angles = 12;
  /// Upper bound on tensor-grid points; the angular resolution is reduced
  /// in high dimension to respect it.
  std::size_t max_grid_points = 200000;
  /// Quasi-random points in the open polydisk on top of the grid.
  std::size_t interior_samples = 4000;
  /// Slice parameters (closed polydisk, torus included) at which the roots of
  /// p in the first variable are checked against the unit disk.
  std::size_t root_probes = 2000;
  /// Uniform torus samples for the |p~/p| = 1 check.
  std::size_t unimodular_samples = 10000;
  std::uint64_t seed = 20240521;
  /// |p| below this counts as a zero.
  double zero_tol = 1e-12;
  /// A slice root with |root| < 1 - root_margin is an interior zero.
  double root_margin = 1e-9;
  /// Torus samples with |p| below this are inside the singular neighborhood.
  double torus_exclusion = 1e-4;
  double unimodular_tol = 1e-9;
};

struct StabilityCertificate {
  double min_interior_modulus = 0.0;
  std::vector<cplx> argmin;
  std::size_t interior_points = 0;
  /// Smallest |root| of p in the first variable over the slice probes.
  double min_slice_root_modulus = 0.0;
  std::size_t slice_probes = 0;
  double max_unimodular_deviation = 0.0;
  std::size_t unimodular_points = 0;
  std::size_t excluded_torus_points = 0;
};

/// phi = p~/p with p zero free in the open polydisk.
class RIF {
 public:
  RIF(MultiPoly p, MultiPoly ptilde, StabilityCertificate cert);

  const MultiPoly& p() const noexcept { return p_; }
  const MultiPoly& ptilde() const noexcept { return ptilde_; }
  const MultiIndex& multidegree() const noexcept { return p_.multidegree(); }
  std::size_t nvars() const noexcept { return p_.nvars(); }
  const StabilityCertificate& certificate() const noexcept { return cert_; }

  cplx eval(std::span<const cplx> z) const;
  /// Numerator of d(phi)/dz_k over p^2: (d_k p~) p - p~ (d_k p).
  MultiPoly derivative_numerator(std::size_t k) const;
  cplx eval_partial(std::size_t k, std::span<const cplx> z) const;

 private:
  MultiPoly p_;
  MultiPoly ptilde_;
  StabilityCertificate cert_;
};

/// Validates p (nonconstant in every variable, no zeros in the open polydisk,
/// unimodular quotient on the torus) and returns the RIF p~/p.
RIF build_rif(const MultiPoly& p, const ProbeConfig& probe = {});

/// Zeros of the one-variable Blaschke product phi(.; zhat) in variable k.
struct BlaschkeSlice {
  std::vector<cplx> zeros;  // all strictly inside the disk
  int degree_defect = 0;    // multidegree[k] - zeros.size()
  /// min(1 - |zero|); empty when the slice is constant.
  std::optional<double> delta;
  /// min |1 - zero|, the literal alternative reading of delta (diagnostic only).
  std::optional<double> delta_to_one;

  bool constant() const noexcept { return zeros.empty(); }
};

/// 1 - |zero| below this puts the zero on the circle.
inline constexpr double kBoundaryZeroTol = 1e-12;

BlaschkeSlice slice_blaschke(const RIF& f, std::size_t k, std::span<const cplx> zhat);

}  // namespace riflab
