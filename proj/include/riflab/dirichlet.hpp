#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riflab/series.hpp"

namespace riflab {

/// Exponents (alpha_1, ..., alpha_n) of the weight prod (1+k_i)^alpha_i.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> alphas);
  WeightVector(std::initializer_list<double> alphas) : WeightVector(std::vector<double>(alphas)) {}
  static WeightVector uniform(std::size_t n, double alpha) {
    return WeightVector(std::vector<double>(n, alpha));
  }

  std::size_t size() const noexcept { return a_.size(); }
  double operator[](std::size_t i) const { return a_[i]; }
  std::span<const double> values() const noexcept { return a_; }

  WeightVector operator+(const WeightVector& o) const;
  WeightVector operator-(const WeightVector& o) const;
  WeightVector scaled(double s) const;
  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<double> a_;
};

/// sum over the box of prod (1+k_i)^alpha_i |a(k)|^2, compensated.
double weighted_partial_sum(const CoeffBox& box, const WeightVector& w);
/// Same sum restricted to the sub-box [0, sub].
double weighted_partial_sum(const CoeffBox& box, const WeightVector& w, const MultiIndex& sub);

/// Weighted sum of d f / d z_i under the weight w - 2 e_i, from the shifted
/// coefficients k_i a(k) placed at k - e_i.
double derivative_shift_norm(const CoeffBox& box, std::size_t i, const WeightVector& w);

enum class Membership { Convergent, Divergent, Inconclusive };
std::string_view to_string(Membership m);

struct PartialSum {
  int order;
  double value;
};

struct MembershipVerdict {
  Membership status = Membership::Inconclusive;
  std::vector<PartialSum> partial_sums;
  /// Power-law exponent s of the per-order shell density, d(N) ~ N^s; the
  /// series converges iff s < -1. -infinity when the series terminates.
  double tail_exponent = 0.0;
  double tail_halfwidth = 0.0;
  /// Local slopes of the shell density between consecutive schedule points.
  std::vector<double> local_slopes;
  std::optional<double> norm_estimate;
  MultiIndex orders_used;
  double margin = 0.15;
  std::string method = "series-classifier";
};

/// Produces the coefficients of f on a requested box.
using SeriesSource = std::function<CoeffBox(const MultiIndex&)>;

struct ClassifyConfig {
  /// Largest admissible tail-exponent uncertainty for a definite verdict.
  double margin = 0.15;
  /// Floor on the reported half-width.
  double min_halfwidth = 1e-3;
};

/// Classifies finiteness of the D_alpha norm from partial sums over the
/// isotropic boxes [0, N_j]^n of a strictly increasing schedule (>= 4 points).
MembershipVerdict classify_membership(const SeriesSource& source, const WeightVector& w,
                                      std::span<const int> schedule,
                                      const ClassifyConfig& cfg = {});

/// Geometric schedule first, 2*first, ... up to last.
std::vector<int> geometric_schedule(int first, int last);

/// Tensor-product quadrature settings for the integral norm.
struct QuadConfig {
  /// Graded radial levels: s = 1 - r^2 in [2^-(l+1), 2^-l].
  int min_levels = 3;
  int max_levels = 12;
  int angular_nodes = 32;
  double rel_tol = 1e-8;
  /// Divide by pi per variable (normalized area measure).
  bool normalized_area = false;
};

struct IntegralEstimate {
  double value = 0.0;
  /// |E_L - E_(L-1)| at the last radial refinement.
  double radial_delta = 0.0;
  /// |E(M angles) - E(M/2 angles)| at the final level; bounds the angular
  /// error of the reported value from above in practice.
  double angular_delta = 0.0;
  int levels = 0;
  bool converged = false;
  bool diverged = false;
  /// Slope of log E against log(1/s_min) when diverging.
  double growth_exponent = 0.0;
  std::vector<double> history;
  std::string method = "quadrature";
};

using DiskFunction = std::function<cplx(std::span<const cplx>)>;

/// int_{D^n} |f|^2 prod (1 - |z_i|^2)^(-1-alpha_i) dA(z) for alpha_i <= 0.
IntegralEstimate integral_norm_leq0(const DiskFunction& f, const WeightVector& w,
                                    const QuadConfig& cfg = {});

}  // namespace riflab
