#include "riflab/dirichlet.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "riflab/errors.hpp"
#include "riflab/parallel.hpp"
#include "riflab/summation.hpp"

namespace riflab {

// -------------------------------------------------------------- WeightVector

WeightVector::WeightVector(std::vector<double> alphas) : a_(std::move(alphas)) {
  for (double a : a_)
    require(std::isfinite(a), ErrorKind::InvalidArgument, "weight exponents must be finite");
}

WeightVector WeightVector::operator+(const WeightVector& o) const {
  require(size() == o.size(), ErrorKind::DimensionMismatch, "weight length mismatch");
  std::vector<double> r(a_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a_[i] + o.a_[i];
  return WeightVector(std::move(r));
}

WeightVector WeightVector::operator-(const WeightVector& o) const { return *this + o.scaled(-1.0); }

WeightVector WeightVector::scaled(double s) const {
  std::vector<double> r(a_);
  for (double& x : r) x *= s;
  return WeightVector(std::move(r));
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Convergent: return "convergent";
    case Membership::Divergent: return "divergent";
    case Membership::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

// ------------------------------------------------------------- weighted sums

namespace {

std::vector<std::vector<double>> weight_tables(const MultiIndex& orders, const WeightVector& w) {
  std::vector<std::vector<double>> t(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    t[i].resize(static_cast<std::size_t>(orders[i]) + 1);
    for (int k = 0; k <= orders[i]; ++k) t[i][k] = std::pow(1.0 + k, w[i]);
  }
  return t;
}

void check_dims(const CoeffBox& box, const WeightVector& w) {
  require(box.nvars() == w.size(), ErrorKind::DimensionMismatch,
          "weight has " + std::to_string(w.size()) + " entries for a " +
              std::to_string(box.nvars()) + "-variable box");
}

}  // namespace

double weighted_partial_sum(const CoeffBox& box, const WeightVector& w) {
  return weighted_partial_sum(box, w, box.orders());
}

double weighted_partial_sum(const CoeffBox& box, const WeightVector& w, const MultiIndex& sub) {
  check_dims(box, w);
  require(sub.size() == box.nvars() && box.orders().dominates(sub), ErrorKind::InvalidArgument,
          "sub-box " + sub.str() + " is not inside " + box.orders().str());
  const auto tables = weight_tables(sub, w);
  const std::size_t n = box.nvars();
  CompensatedSum acc;
  for_each_index(sub, [&](std::span<const int> k, std::size_t) {
    const double a2 = std::norm(box[box.linear_index(k)]);
    if (a2 == 0.0) return;
    double wt = 1.0;
    for (std::size_t i = 0; i < n; ++i) wt *= tables[i][k[i]];
    acc += wt * a2;
  });
  return acc.value();
}

double derivative_shift_norm(const CoeffBox& box, std::size_t i, const WeightVector& w) {
  check_dims(box, w);
  require(i < box.nvars(), ErrorKind::InvalidArgument, "derivative index out of range");
  const std::size_t n = box.nvars();
  std::vector<double> shifted(w.values().begin(), w.values().end());
  shifted[i] -= 2.0;
  const auto tables = weight_tables(box.orders(), WeightVector(shifted));
  CompensatedSum acc;
  for_each_index(box.orders(), [&](std::span<const int> k, std::size_t lin) {
    if (k[i] == 0) return;
    const double a2 = std::norm(static_cast<double>(k[i]) * box[lin]);
    if (a2 == 0.0) return;
    double wt = 1.0;
    for (std::size_t j = 0; j < n; ++j) wt *= tables[j][j == i ? k[j] - 1 : k[j]];
    acc += wt * a2;
  });
  return acc.value();
}

// -------------------------------------------------------------- classifier

std::vector<int> geometric_schedule(int first, int last) {
  require(first >= 1 && last >= first, ErrorKind::InvalidArgument, "invalid schedule bounds");
  std::vector<int> s;
  for (long long n = first; n <= last; n *= 2) s.push_back(static_cast<int>(n));
  return s;
}

MembershipVerdict classify_membership(const SeriesSource& source, const WeightVector& w,
                                      std::span<const int> schedule, const ClassifyConfig& cfg) {
  require(schedule.size() >= 4, ErrorKind::InvalidArgument,
          "membership schedule needs at least 4 orders");
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    require(schedule[j] >= 1, ErrorKind::InvalidArgument, "schedule orders must be positive");
    if (j > 0)
      require(schedule[j] > schedule[j - 1], ErrorKind::InvalidArgument,
              "schedule must be strictly increasing");
  }
  const std::size_t n = w.size();
  const int top = schedule.back();
  const CoeffBox box = source(MultiIndex::filled(n, top));
  check_dims(box, w);
  require(box.orders().dominates(MultiIndex::filled(n, top)), ErrorKind::InvalidArgument,
          "series source returned a box smaller than requested");

  // Shell j holds indices with max_i k_i in (N_(j-1), N_j]; shell 0 is the
  // first box.
  const auto tables = weight_tables(MultiIndex::filled(n, top), w);
  std::vector<int> shell_of(static_cast<std::size_t>(top) + 1);
  for (int m = 0, j = 0; m <= top; ++m) {
    while (schedule[j] < m) ++j;
    shell_of[m] = j;
  }
  std::vector<CompensatedSum> shells(schedule.size());
  for_each_index(MultiIndex::filled(n, top), [&](std::span<const int> k, std::size_t) {
    const double a2 = std::norm(box.get(k));
    if (a2 == 0.0) return;
    double wt = 1.0;
    int m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      wt *= tables[i][k[i]];
      m = std::max(m, k[i]);
    }
    shells[shell_of[m]] += wt * a2;
  });

  MembershipVerdict v;
  v.margin = cfg.margin;
  v.orders_used = box.orders();
  CompensatedSum running;
  std::vector<double> incr;
  for (std::size_t j = 0; j < shells.size(); ++j) {
    running += shells[j];
    v.partial_sums.push_back({schedule[j], running.value()});
    if (j > 0) incr.push_back(shells[j].value());
  }
  const double total = running.value();

  // Terminating series: the last two shells are empty.
  const double tiny = 1e-300 + 1e-28 * total;
  if (incr[incr.size() - 1] <= tiny && incr[incr.size() - 2] <= tiny) {
    v.status = Membership::Convergent;
    v.tail_exponent = -std::numeric_limits<double>::infinity();
    v.norm_estimate = total;
    return v;
  }

  // Density per unit order in each shell, and its local log-log slopes.
  std::vector<double> dens, mid;
  for (std::size_t j = 1; j < schedule.size(); ++j) {
    dens.push_back(incr[j - 1] / static_cast<double>(schedule[j] - schedule[j - 1]));
    mid.push_back(std::sqrt(static_cast<double>(schedule[j]) * schedule[j - 1]));
  }
  for (std::size_t j = 1; j < dens.size(); ++j) {
    if (dens[j] <= 0.0 || dens[j - 1] <= 0.0) {
      v.local_slopes.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    v.local_slopes.push_back(std::log(dens[j] / dens[j - 1]) / std::log(mid[j] / mid[j - 1]));
  }
  const auto& sl = v.local_slopes;
  const std::size_t m = sl.size();
  const double last = sl[m - 1], prev = sl[m - 2];
  if (!std::isfinite(last) || !std::isfinite(prev)) {
    v.status = Membership::Inconclusive;
    v.tail_exponent = std::isfinite(last) ? last : 0.0;
    v.tail_halfwidth = std::numeric_limits<double>::infinity();
    return v;
  }

  // Aitken extrapolation of the slope sequence when it is converging
  // monotonically; otherwise the last slope with its last change as error.
  auto aitken = [&](std::size_t end, double& est) {
    const double d1 = sl[end - 1] - sl[end - 2], d2 = sl[end] - sl[end - 1];
    if (!(d1 * d2 > 0.0) || std::abs(d2) >= std::abs(d1)) return false;
    est = sl[end] - d2 * d2 / (d2 - d1);
    return std::isfinite(est);
  };
  double s = last;
  double h = std::abs(last - prev);
  bool accelerating = false;
  double est = 0.0;
  if (m >= 3 && aitken(m - 1, est)) {
    s = est;
    double est_prev = 0.0;
    if (m >= 4 && aitken(m - 2, est_prev))
      h = 2.0 * std::abs(est - est_prev);
    else
      h = std::abs(est - last);
  } else if (m >= 3) {
    const double d1 = sl[m - 2] - sl[m - 3], d2 = last - prev;
    accelerating = d1 * d2 > 0.0 && std::abs(d2) >= std::abs(d1);
  }
  h = std::max(h, cfg.min_halfwidth);
  v.tail_exponent = s;
  v.tail_halfwidth = h;

  if (accelerating && last < prev && last < -1.0 - cfg.margin) {
    // Decay steepening faster than any power law.
    v.status = Membership::Convergent;
  } else if (accelerating && last > prev && last > -1.0 + cfg.margin) {
    v.status = Membership::Divergent;
  } else if (h > cfg.margin) {
    v.status = Membership::Inconclusive;
  } else if (s + h < -1.0) {
    v.status = Membership::Convergent;
  } else if (s - h >= -1.0) {
    v.status = Membership::Divergent;
  } else {
    v.status = Membership::Inconclusive;
  }

  if (v.status == Membership::Convergent) {
    // Remaining shells continue the fitted power law geometrically.
    const double ratio = static_cast<double>(schedule.back()) / schedule[schedule.size() - 2];
    const double x = std::pow(ratio, s + 1.0);
    v.norm_estimate = total + (x < 1.0 ? incr.back() * x / (1.0 - x) : 0.0);
  }
  return v;
}

// ------------------------------------------------------- integral norm <= 0

namespace {

constexpr double kPi = std::numbers::pi;

struct Node {
  cplx z;
  double w;
};

// Radial x angular nodes for one variable at a refinement level.
std::vector<Node> disk_nodes(double alpha, int levels, int angles, bool normalized) {
  using GL = boost::math::quadrature::gauss<double, 10>;
  const double beta = -1.0 - alpha;  // weight s^beta with s = 1 - r^2
  std::vector<double> gx, gw;
  for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
    const double x = GL::abscissa()[i], wt = GL::weights()[i];
    gx.push_back(x);
    gw.push_back(wt);
    if (x != 0.0) {
      gx.push_back(-x);
      gw.push_back(wt);
    }
  }
  std::vector<std::pair<double, double>> radial;  // (s, weight incl. s^beta / 2)
  for (int l = 0; l < levels; ++l) {
    const double b = std::ldexp(1.0, -l), a = b / 2;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double s = a + (b - a) * (gx[i] + 1.0) / 2.0;
      radial.emplace_back(s, 0.5 * gw[i] * (b - a) / 2.0 * std::pow(s, beta));
    }
  }
  if (beta > -1.0) {
    // [0, S] with s = S t^m, m = 1/(beta+1): the weight becomes constant.
    const double S = std::ldexp(1.0, -levels);
    const double mexp = 1.0 / (beta + 1.0);
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double t = (gx[i] + 1.0) / 2.0;
      const double s = S * std::pow(t, mexp);
      radial.emplace_back(s, 0.5 * gw[i] / 2.0 * std::pow(S, beta + 1.0) * mexp);
    }
  }
  std::vector<Node> nodes;
  const double dth = 2.0 * kPi / angles;
  const double norm = normalized ? 1.0 / kPi : 1.0;
  for (const auto& [s, wr] : radial) {
    const double r = std::sqrt(std::max(0.0, 1.0 - s));
    for (int a = 0; a < angles; ++a)
      nodes.push_back({std::polar(r, dth * (a + 0.5)), wr * dth * norm});
  }
  return nodes;
}

double tensor_sum(const DiskFunction& f, const std::vector<std::vector<Node>>& nodes) {
  const std::size_t n = nodes.size();
  const std::size_t outer = nodes[0].size();
  constexpr std::size_t kBlocks = 64;
  std::vector<CompensatedSum> partial(kBlocks);
  for_each_block(kBlocks, [&](std::size_t b) {
    const BlockRange range = block_range(outer, kBlocks, b);
    std::vector<cplx> z(n);
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t o = range.begin; o < range.end; ++o) {
      std::fill(idx.begin(), idx.end(), 0);
      idx[0] = o;
      while (true) {
        double wt = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
          z[i] = nodes[i][idx[i]].z;
          wt *= nodes[i][idx[i]].w;
        }
        partial[b] += wt * std::norm(f(z));
        std::size_t i = n;
        while (--i > 0 && ++idx[i] == nodes[i].size()) idx[i] = 0;
        if (i == 0) break;
      }
    }
  });
  CompensatedSum total;
  for (const auto& p : partial) total += p;
  return total.value();
}

}  // namespace

IntegralEstimate integral_norm_leq0(const DiskFunction& f, const WeightVector& w,
                                    const QuadConfig& cfg) {
  const std::size_t n = w.size();
  require(n >= 1, ErrorKind::InvalidArgument, "integral norm needs at least one variable");
  for (double a : w.values())
    require(a <= 0.0, ErrorKind::InvalidArgument,
            "integral norm is only equivalent for nonpositive weights");
  require(cfg.min_levels >= 1 && cfg.max_levels >= cfg.min_levels && cfg.angular_nodes >= 1,
          ErrorKind::InvalidArgument, "invalid quadrature configuration");

  auto estimate = [&](int levels, int angles) {
    std::vector<std::vector<Node>> nodes;
    for (std::size_t i = 0; i < n; ++i)
      nodes.push_back(disk_nodes(w[i], levels, angles, cfg.normalized_area));
    return tensor_sum(f, nodes);
  };

  IntegralEstimate out;
  for (int L = cfg.min_levels; L <= cfg.max_levels; ++L) {
    out.history.push_back(estimate(L, cfg.angular_nodes));
    out.levels = L;
    const std::size_t h = out.history.size();
    if (h < 2) continue;
    out.radial_delta = std::abs(out.history[h - 1] - out.history[h - 2]);
    if (out.radial_delta <= cfg.rel_tol * std::abs(out.history[h - 1])) {
      out.converged = true;
      break;
    }
    if (h >= 4) {
      const double d1 = out.history[h - 3] - out.history[h - 4];
      const double d2 = out.history[h - 2] - out.history[h - 3];
      const double d3 = out.history[h - 1] - out.history[h - 2];
      if (d1 > 0 && d2 >= 0.9 * d1 && d3 >= 0.9 * d2) {
        out.diverged = true;
        break;
      }
    }
  }
  out.value = out.history.back();
  if (out.diverged) {
    const std::size_t h = out.history.size();
    out.growth_exponent =
        std::log(out.history[h - 1] / out.history[h - 2]) / std::log(2.0);
    out.value = std::numeric_limits<double>::infinity();
  } else {
    // Halving is 2^n times cheaper than doubling and overstates the error of
    // the finer rule, so the diagnostic stays conservative.
    if (cfg.angular_nodes >= 2)
      out.angular_delta = std::abs(out.history.back() - estimate(out.levels, cfg.angular_nodes / 2));
  }
  return out;
}

}  // namespace riflab
