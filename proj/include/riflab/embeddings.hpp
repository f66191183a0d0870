#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riflab/dirichlet.hpp"
#include "riflab/hardy.hpp"

namespace riflab {

/// Hölder exponents p_1..p_{n-1} and the derived c_1..c_n with sum 1/c_i = 1.
struct HolderSplit {
  std::vector<double> ps;
  std::vector<double> cs;
};

/// c_l = p_l prod_{j<l} p_j/(p_j-1), c_n = prod_j p_j/(p_j-1). Products are
/// accumulated as separate numerator and denominator so integer inputs stay
/// exact.
std::vector<double> cs_from_ps(std::span<const double> ps);
/// Inverse by forward substitution; rejects sum 1/c_i != 1 beyond tol.
std::vector<double> ps_from_cs(std::span<const double> cs, double tol = 1e-12);
HolderSplit holder_split(std::span<const double> ps);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline constexpr double kInequalitySlack = 1e-9;

/// Weighted sum at w against prod_i S_i^(1/c_i), S_i the anisotropic sum with
/// exponent c_i w_i in slot i and 0 elsewhere.
InequalityCheck holder_check(const CoeffBox& box, const WeightVector& w, std::span<const double> cs);

/// S(alpha + V) <= S(alpha - U + pV)^(1/p) S(alpha + (q-1)U)^(1/q), S the
/// squared weighted sum.
InequalityCheck norm_interp_check(const CoeffBox& box, const WeightVector& alpha,
                                  const WeightVector& V, const WeightVector& U, double p);

/// n-step version: the two-term inequality applied to its own last factor with
/// V_{k+1} = (q_k - 1) U_k. Us and ps have equal length >= 1.
struct ChainCheck {
  InequalityCheck result;
  /// Shifts V'_1..V'_m followed by the terminal V'.
  std::vector<WeightVector> shifts;
  /// Exponents of the squared sums, summing to 1.
  std::vector<double> exponents;
};
ChainCheck chain_interp_check(const CoeffBox& box, const WeightVector& alpha, const WeightVector& V,
                              std::span<const WeightVector> Us, std::span<const double> ps);

using Rational = boost::rational<long long>;
using RationalVector = std::vector<Rational>;

/// Special chain p_1 = n, p_{k+1} = p_k - 1, V = -c 1, c = 2(n-1)/n, in exact
/// arithmetic.
struct TelescopingChain {
  int n = 0;
  Rational c;
  std::vector<Rational> ps;
  RationalVector V;
  std::vector<RationalVector> Us;
  /// V'_k from the forward recursion V'_1 = -U_1 + p_1 V,
  /// V'_{k+1} = -U_{k+1} + p_{k+1}(q_k - 1) U_k.
  std::vector<RationalVector> shifts;
  RationalVector terminal;  // V' = (q_{n-1} - 1) U_{n-1}
  /// Exponents of the n squared sums in the product bound.
  std::vector<Rational> exponents;
  /// Every V'_k equals -2 * 1_{-k} and V' equals -2 * 1_{-n}.
  bool identities_hold = false;
};

TelescopingChain telescoping_chain(int n);

/// Ones with a zero in slot k (0-based).
RationalVector ones_except(int n, int k);

/// A theorem applied to numerically estimated hypotheses.
struct Implication {
  double claimed_exponent = 0.0;
  std::string claim;
  std::string method = "theorem-implication";
  /// hypothesis-verified | hypothesis-refuted | hypothesis-unchecked | hypothesis-inconclusive
  std::string basis = "hypothesis-unchecked";
  std::vector<std::string> provenance;
};

/// 1/p in D_alpha (alpha < 0) implies p~/p in D_{alpha + 2/n}. The optional
/// verdict is a classify_membership result for 1/p at alpha.
Implication inverse_denominator_verdict(double alpha, int n,
                                        const std::optional<MembershipVerdict>& hypothesis = {});

struct Feasibility {
  bool feasible = false;
  /// Witness c (sum 1/c_k = 1) when feasible.
  std::vector<double> cs;
  /// sum alpha_k / t_k over entries with alpha_k > 0 and a finite threshold.
  double load = 0.0;
  /// The H^p exponents c_k alpha_k actually requested exceed 2 somewhere.
  bool outside_stated_range = false;
  /// Some profile entry was inconclusive.
  bool uses_inconclusive = false;
  std::string method = "theorem-implication";
};

/// Whether weights alpha follow from d_k phi in H^(t_k): needs c with
/// sum 1/c_k = 1 and c_k alpha_k < t_k (<= on closed endpoints).
Feasibility hp_embed_feasible(const WeightVector& alphas, const IntegrabilityProfile& profile);

}  // namespace riflab
