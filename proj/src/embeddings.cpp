#include "riflab/embeddings.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "riflab/errors.hpp"

namespace riflab {

namespace {

WeightVector slot_weight(std::size_t n, std::size_t i, double a) {
  std::vector<double> w(n, 0.0);
  w[i] = a;
  return WeightVector(std::move(w));
}

// prod S_k^(e_k), evaluated in logs.
double weighted_product(const std::vector<double>& sums, const std::vector<double>& exps) {
  double log_sum = 0.0;
  for (std::size_t k = 0; k < sums.size(); ++k) {
    if (exps[k] == 0.0) continue;
    if (sums[k] == 0.0) return 0.0;
    log_sum += exps[k] * std::log(sums[k]);
  }
  return std::exp(log_sum);
}

InequalityCheck compare(double lhs, double rhs) {
  return {lhs, rhs, lhs <= rhs * (1.0 + kInequalitySlack)};
}

void check_dims(const CoeffBox& box, const WeightVector& w) {
  require(box.nvars() == w.size(), ErrorKind::DimensionMismatch,
          "weight length does not match the number of variables");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

std::vector<double> cs_from_ps(std::span<const double> ps) {
  for (double p : ps)
    require(std::isfinite(p) && p > 1.0, ErrorKind::InvalidArgument, "Hölder exponents must exceed 1");
  std::vector<double> cs;
  double num = 1.0, den = 1.0;  // prod_{j<l} p_j and prod_{j<l} (p_j - 1)
  for (double p : ps) {
    cs.push_back(p * num / den);
    num *= p;
    den *= p - 1.0;
  }
  cs.push_back(num / den);
  return cs;
}

std::vector<double> ps_from_cs(std::span<const double> cs, double tol) {
  require(!cs.empty(), ErrorKind::InvalidArgument, "empty c vector");
  double s = 0.0;
  for (double c : cs) {
    require(std::isfinite(c) && c > 0.0, ErrorKind::InvalidArgument, "c values must be positive");
    s += 1.0 / c;
  }
  require(std::abs(s - 1.0) <= tol, ErrorKind::InvalidArgument,
          "sum of 1/c_i is " + fmt(s) + ", not 1");
  std::vector<double> ps;
  double num = 1.0, den = 1.0;
  for (std::size_t l = 0; l + 1 < cs.size(); ++l) {
    const double p = cs[l] * den / num;
    require(p > 1.0, ErrorKind::InvalidArgument, "c vector implies a Hölder exponent <= 1");
    ps.push_back(p);
    num *= p;
    den *= p - 1.0;
  }
  return ps;
}

HolderSplit holder_split(std::span<const double> ps) {
  return {std::vector<double>(ps.begin(), ps.end()), cs_from_ps(ps)};
}

InequalityCheck holder_check(const CoeffBox& box, const WeightVector& w, std::span<const double> cs) {
  check_dims(box, w);
  require(cs.size() == w.size(), ErrorKind::DimensionMismatch, "c vector length mismatch");
  ps_from_cs(cs, 1e-9);  // validates
  const double lhs = weighted_partial_sum(box, w);
  std::vector<double> sums, exps;
  for (std::size_t i = 0; i < w.size(); ++i) {
    sums.push_back(weighted_partial_sum(box, slot_weight(w.size(), i, cs[i] * w[i])));
    exps.push_back(1.0 / cs[i]);
  }
  return compare(lhs, weighted_product(sums, exps));
}

InequalityCheck norm_interp_check(const CoeffBox& box, const WeightVector& alpha,
                                  const WeightVector& V, const WeightVector& U, double p) {
  check_dims(box, alpha);
  require(V.size() == alpha.size() && U.size() == alpha.size(), ErrorKind::DimensionMismatch,
          "shift length mismatch");
  require(p > 1.0 && std::isfinite(p), ErrorKind::InvalidArgument, "p must exceed 1");
  const double q = p / (p - 1.0);
  const double lhs = weighted_partial_sum(box, alpha + V);
  const double a = weighted_partial_sum(box, alpha - U + V.scaled(p));
  const double b = weighted_partial_sum(box, alpha + U.scaled(q - 1.0));
  return compare(lhs, weighted_product({a, b}, {1.0 / p, 1.0 / q}));
}

ChainCheck chain_interp_check(const CoeffBox& box, const WeightVector& alpha, const WeightVector& V,
                              std::span<const WeightVector> Us, std::span<const double> ps) {
  check_dims(box, alpha);
  require(!Us.empty() && Us.size() == ps.size(), ErrorKind::DimensionMismatch,
          "chain needs one U per Hölder exponent");
  ChainCheck out;
  double carried = 1.0;  // prod_{j<k} 1/q_j
  WeightVector prev_u;
  double prev_q = 0.0;
  for (std::size_t k = 0; k < Us.size(); ++k) {
    const double p = ps[k];
    require(p > 1.0 && std::isfinite(p), ErrorKind::InvalidArgument, "p must exceed 1");
    require(Us[k].size() == alpha.size(), ErrorKind::DimensionMismatch, "shift length mismatch");
    const double q = p / (p - 1.0);
    const WeightVector base = k == 0 ? V : prev_u.scaled(prev_q - 1.0);
    out.shifts.push_back(base.scaled(p) - Us[k]);
    out.exponents.push_back(carried / p);
    carried /= q;
    prev_u = Us[k];
    prev_q = q;
  }
  out.shifts.push_back(prev_u.scaled(prev_q - 1.0));
  out.exponents.push_back(carried);

  std::vector<double> sums;
  for (const WeightVector& s : out.shifts) sums.push_back(weighted_partial_sum(box, alpha + s));
  out.result = compare(weighted_partial_sum(box, alpha + V), weighted_product(sums, out.exponents));
  return out;
}

RationalVector ones_except(int n, int k) {
  RationalVector v(static_cast<std::size_t>(n), Rational(1));
  v[static_cast<std::size_t>(k)] = 0;
  return v;
}

TelescopingChain telescoping_chain(int n) {
  require(n >= 2, ErrorKind::InvalidArgument, "chain needs n >= 2");
  require(n <= 64, ErrorKind::InvalidArgument, "chain limited to n <= 64");
  auto axpy = [](Rational a, const RationalVector& x, const RationalVector& y) {
    RationalVector r(y);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += a * x[i];
    return r;
  };
  auto scale = [](Rational a, RationalVector x) {
    for (auto& v : x) v *= a;
    return x;
  };

  TelescopingChain ch;
  ch.n = n;
  ch.c = Rational(2 * (n - 1), n);
  ch.V.assign(static_cast<std::size_t>(n), -ch.c);
  for (int k = 0; k + 1 < n; ++k) ch.ps.push_back(Rational(n - k));

  // U_1 = 2 * 1_{-1} - c n 1, U_{k+1} = 2 * 1_{-(k+1)} + U_k.
  RationalVector U = axpy(Rational(2), ones_except(n, 0),
                          RationalVector(static_cast<std::size_t>(n), -ch.c * n));
  ch.Us.push_back(U);
  for (int k = 1; k + 1 < n; ++k) {
    U = axpy(Rational(2), ones_except(n, k), U);
    ch.Us.push_back(U);
  }

  Rational carried(1);
  bool ok = true;
  for (std::size_t k = 0; k < ch.Us.size(); ++k) {
    const Rational p = ch.ps[k];
    const Rational q = p / (p - 1);
    const RationalVector& base = k == 0 ? ch.V : scale(ch.ps[k - 1] / (ch.ps[k - 1] - 1) - 1, ch.Us[k - 1]);
    const RationalVector shift = axpy(Rational(-1), ch.Us[k], scale(p, base));
    ok = ok && shift == scale(Rational(-2), ones_except(n, static_cast<int>(k)));
    ch.shifts.push_back(shift);
    ch.exponents.push_back(carried / p);
    carried /= q;
  }
  const Rational p_last = ch.ps.back();
  ch.terminal = scale(p_last / (p_last - 1) - 1, ch.Us.back());
  ch.exponents.push_back(carried);
  ch.identities_hold = ok && ch.terminal == scale(Rational(-2), ones_except(n, n - 1)) &&
                       ch.terminal == ch.Us.back();
  return ch;
}

Implication inverse_denominator_verdict(double alpha, int n,
                                        const std::optional<MembershipVerdict>& hypothesis) {
  require(std::isfinite(alpha) && alpha < 0.0, ErrorKind::InvalidArgument,
          "the denominator hypothesis needs alpha < 0");
  require(n >= 1, ErrorKind::InvalidArgument, "n must be positive");
  Implication out;
  out.claimed_exponent = alpha + 2.0 / n;
  out.claim = "p~/p in D_" + fmt(out.claimed_exponent) + " given 1/p in D_" + fmt(alpha);
  if (hypothesis) {
    switch (hypothesis->status) {
      case Membership::Convergent: out.basis = "hypothesis-verified"; break;
      case Membership::Divergent: out.basis = "hypothesis-refuted"; break;
      case Membership::Inconclusive: out.basis = "hypothesis-inconclusive"; break;
    }
    out.provenance.push_back(hypothesis->method + ": 1/p at alpha " + fmt(alpha) + " " +
                             std::string(to_string(hypothesis->status)) + ", tail exponent " +
                             fmt(hypothesis->tail_exponent) + " +- " +
                             fmt(hypothesis->tail_halfwidth));
  }
  out.provenance.push_back("theorem: 1/p in D_alpha with alpha < 0 implies p~/p in D_(alpha+2/n)");
  return out;
}

Feasibility hp_embed_feasible(const WeightVector& alphas, const IntegrabilityProfile& profile) {
  const std::size_t n = alphas.size();
  require(profile.entries.size() == n, ErrorKind::DimensionMismatch,
          "profile length does not match the weight vector");
  Feasibility out;
  std::vector<bool> constrained(n, false);
  bool all_closed = true;
  std::size_t free_count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const ThresholdEntry& e = profile.entries[k];
    require(e.bounded || (std::isfinite(e.value) && e.value > 0.0), ErrorKind::InvalidArgument,
            "thresholds must be positive");
    out.uses_inconclusive = out.uses_inconclusive || e.inconclusive;
    if (alphas[k] > 0.0 && !e.bounded) {
      constrained[k] = true;
      out.load += alphas[k] / e.value;
      all_closed = all_closed && e.endpoint == Endpoint::Closed;
    } else {
      ++free_count;
    }
  }

  std::vector<double> inv(n, 0.0);  // 1/c_k
  const double L = out.load;
  const bool boundary = std::abs(L - 1.0) <= 1e-12;
  if (L < 1.0 && !boundary) {
    out.feasible = true;
    // Constrained entries get mu * alpha/t with mu > 1; free entries share what is left.
    const double mu = free_count == 0 ? 1.0 / L : (L > 0.0 ? 0.5 * (1.0 + 1.0 / L) : 0.0);
    const double rest = free_count == 0 ? 0.0 : (1.0 - mu * L) / static_cast<double>(free_count);
    for (std::size_t k = 0; k < n; ++k)
      inv[k] = constrained[k] ? mu * alphas[k] / profile.entries[k].value : rest;
  } else if (boundary && all_closed && free_count == 0) {
    out.feasible = true;
    for (std::size_t k = 0; k < n; ++k) inv[k] = alphas[k] / profile.entries[k].value;
  }
  if (out.feasible) {
    for (std::size_t k = 0; k < n; ++k) {
      out.cs.push_back(1.0 / inv[k]);
      if (alphas[k] > 0.0 && out.cs.back() * alphas[k] > 2.0) out.outside_stated_range = true;
    }
  }
  return out;
}

}  // namespace riflab
