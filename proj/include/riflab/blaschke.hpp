#pragma once

#include <vector>

#include "riflab/polycore.hpp"

namespace riflab {

/// Finite Blaschke product c * prod (z - a_j) / (1 - conj(a_j) z).
class BlaschkeProduct {
 public:
  explicit BlaschkeProduct(std::vector<cplx> zeros, cplx unimodular = 1.0);

  const std::vector<cplx>& zeros() const noexcept { return zeros_; }
  cplx constant() const noexcept { return c_; }
  std::size_t degree() const noexcept { return zeros_.size(); }
  /// min(1 - |a_j|), or 1 for a constant product.
  double epsilon() const noexcept;
  double max_zero_modulus() const noexcept;
  cplx eval(cplx z) const noexcept;

  /// Taylor coefficients b(0..order), one O(order) recurrence per factor.
  std::vector<cplx> taylor(int order) const;

 private:
  std::vector<cplx> zeros_;
  cplx c_;
};

struct DNorm1D {
  double value;  // sum_{k<=N} (1+k)^p |b(k)|^2
  double tail;   // bound on the omitted part
  int order;
};

/// max(64, ceil(scale / epsilon)).
int auto_truncation(const BlaschkeProduct& b, double scale = 40.0);

/// Truncated D_p norm. Throws ErrorKind::Truncation when the tail bound exceeds
/// rel_tol times the value.
DNorm1D d_alpha_norm_1d(const BlaschkeProduct& b, double p, int order, double rel_tol = 1e-8);

/// ||b||^2_{D_p} * epsilon^(p-1) at the automatic truncation order.
double onedim_ratio(const BlaschkeProduct& b, double p);

}  // namespace riflab
