#include "riflab/polycore.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <sstream>

#include "riflab/errors.hpp"

namespace riflab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::InteriorZero: return "interior_zero";
    case ErrorKind::DegenerateVariable: return "degenerate_variable";
    case ErrorKind::UnimodularityFailure: return "unimodularity_failure";
    case ErrorKind::SliceVanishes: return "slice_vanishes";
    case ErrorKind::ResourceLimit: return "resource_limit";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::NumericalFailure: return "numerical_failure";
    case ErrorKind::Parse: return "parse_error";
  }
  return "unknown";
}

// ---------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
  for (int v : e_)
    require(v >= 0, ErrorKind::InvalidArgument, "negative exponent in multi-index");
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t i) {
  std::vector<int> e(n, 0);
  e.at(i) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::total() const noexcept {
  int t = 0;
  for (int v : e_) t += v;
  return t;
}

bool MultiIndex::dominates(const MultiIndex& other) const {
  require(size() == other.size(), ErrorKind::DimensionMismatch, "multi-index length mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] < other.e_[i]) return false;
  return true;
}

MultiIndex MultiIndex::with(std::size_t i, int value) const {
  std::vector<int> e = e_;
  e.at(i) = value;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  require(size() == other.size(), ErrorKind::DimensionMismatch, "multi-index length mismatch");
  std::vector<int> e(e_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = e_[i] + other.e_[i];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  require(dominates(other), ErrorKind::InvalidArgument, "multi-index difference would be negative");
  std::vector<int> e(e_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = e_[i] - other.e_[i];
  return MultiIndex(std::move(e));
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e_.size(); ++i) os << (i ? "," : "") << e_[i];
  os << ')';
  return os.str();
}

// ------------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<cplx> coeffs, double trim_tol) : c_(std::move(coeffs)) {
  double scale = 0.0;
  for (const cplx& c : c_) scale = std::max(scale, std::abs(c));
  const double cut = trim_tol * scale;
  while (!c_.empty() && std::abs(c_.back()) <= cut) c_.pop_back();
}

cplx UniPoly::eval(cplx z) const noexcept {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<cplx, cplx> UniPoly::eval_with_derivative(cplx z) const noexcept {
  cplx v = 0.0, d = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  return {v, d};
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return UniPoly(std::move(d));
}

// ----------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(std::size_t nvars) : n_(nvars), degree_(MultiIndex::zeros(nvars)) {
  require(nvars >= 1, ErrorKind::InvalidArgument, "polynomial needs at least one variable");
}

MultiPoly::MultiPoly(std::size_t nvars, TermMap terms) : n_(nvars), terms_(std::move(terms)) {
  require(nvars >= 1, ErrorKind::InvalidArgument, "polynomial needs at least one variable");
  for (const auto& [e, c] : terms_)
    require(e.size() == n_, ErrorKind::DimensionMismatch,
            "exponent " + e.str() + " does not match " + std::to_string(n_) + " variables");
  normalize();
}

void MultiPoly::normalize() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == cplx(0.0); });
  std::vector<int> d(n_, 0);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < n_; ++i) d[i] = std::max(d[i], e[i]);
  degree_ = MultiIndex(std::move(d));
}

MultiPoly MultiPoly::constant(std::size_t nvars, cplx c) {
  return MultiPoly(nvars, {{MultiIndex::zeros(nvars), c}});
}

MultiPoly MultiPoly::monomial(const MultiIndex& e, cplx c) {
  return MultiPoly(e.size(), {{e, c}});
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t i) {
  return monomial(MultiIndex::unit(nvars, i));
}

cplx MultiPoly::coeff(const MultiIndex& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

double MultiPoly::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

cplx MultiPoly::eval(std::span<const cplx> z) const {
  require(z.size() == n_, ErrorKind::DimensionMismatch,
          "evaluation point has " + std::to_string(z.size()) + " entries, expected " +
              std::to_string(n_));
  // Power tables per variable in one reused buffer, then one product per term.
  thread_local std::vector<cplx> pw;
  thread_local std::vector<std::size_t> base;
  base.resize(n_);
  std::size_t total = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    base[i] = total;
    total += static_cast<std::size_t>(degree_[i]) + 1;
  }
  pw.resize(total);
  for (std::size_t i = 0; i < n_; ++i) {
    cplx* row = pw.data() + base[i];
    row[0] = 1.0;
    for (int k = 1; k <= degree_[i]; ++k) row[k] = row[k - 1] * z[i];
  }
  cplx acc = 0.0;
  for (const auto& [e, c] : terms_) {
    cplx t = c;
    for (std::size_t i = 0; i < n_; ++i) t *= pw[base[i] + e[i]];
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
  require(n_ == other.n_, ErrorKind::DimensionMismatch, "variable count mismatch");
  TermMap t = terms_;
  for (const auto& [e, c] : other.terms_) t[e] += c;
  return MultiPoly(n_, std::move(t));
}

MultiPoly MultiPoly::operator-() const {
  TermMap t = terms_;
  for (auto& [e, c] : t) c = -c;
  return MultiPoly(n_, std::move(t));
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const { return *this + (-other); }

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
  require(n_ == other.n_, ErrorKind::DimensionMismatch, "variable count mismatch");
  TermMap t;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : other.terms_) t[ea + eb] += ca * cb;
  return MultiPoly(n_, std::move(t));
}

MultiPoly operator*(cplx s, const MultiPoly& p) {
  MultiPoly::TermMap t = p.terms_;
  for (auto& [e, c] : t) c *= s;
  return MultiPoly(p.n_, std::move(t));
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    for (std::size_t i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      os << "*z" << (i + 1);
      if (e[i] > 1) os << '^' << e[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- operations

MultiPoly reflect(const MultiPoly& p, const MultiIndex& d) {
  require(d.size() == p.nvars(), ErrorKind::DimensionMismatch, "reflection degree length mismatch");
  require(d.dominates(p.multidegree()), ErrorKind::InvalidArgument,
          "reflection degree " + d.str() + " is below the multidegree " + p.multidegree().str());
  MultiPoly::TermMap t;
  for (const auto& [e, c] : p.terms()) t.emplace(d - e, std::conj(c));
  return MultiPoly(p.nvars(), std::move(t));
}

MultiPoly partial_derivative(const MultiPoly& p, std::size_t i) {
  require(i < p.nvars(), ErrorKind::InvalidArgument,
          "variable index " + std::to_string(i) + " out of range");
  MultiPoly::TermMap t;
  for (const auto& [e, c] : p.terms()) {
    if (e[i] == 0) continue;
    t.emplace(e.with(i, e[i] - 1), static_cast<double>(e[i]) * c);
  }
  return MultiPoly(p.nvars(), std::move(t));
}

UniPoly slice(const MultiPoly& p, std::size_t k, std::span<const cplx> zhat) {
  const std::size_t n = p.nvars();
  require(k < n, ErrorKind::InvalidArgument, "slice variable out of range");
  require(zhat.size() + 1 == n, ErrorKind::DimensionMismatch,
          "slice point has " + std::to_string(zhat.size()) + " entries, expected " +
              std::to_string(n - 1));
  const MultiIndex& deg = p.multidegree();
  std::vector<cplx> coeffs(static_cast<std::size_t>(deg[k]) + 1, 0.0);
  double scale = 0.0;
  for (const auto& [e, c] : p.terms()) {
    cplx t = c;
    double mag = std::abs(c);
    for (std::size_t i = 0, j = 0; i < n; ++i) {
      if (i == k) continue;
      const cplx zi = zhat[j++];
      for (int m = 0; m < e[i]; ++m) t *= zi;
      mag *= std::pow(std::abs(zi), e[i]);
    }
    coeffs[e[k]] += t;
    scale = std::max(scale, mag);
  }
  // Trim cancellations relative to the largest contributing term, not the
  // largest surviving coefficient.
  const double cut = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  while (!coeffs.empty() && std::abs(coeffs.back()) <= cut) coeffs.pop_back();
  return UniPoly(std::move(coeffs));
}

std::vector<cplx> roots(const UniPoly& u) {
  require(!u.is_zero(), ErrorKind::InvalidArgument, "roots of the zero polynomial");
  const int deg = u.degree();
  require(deg >= 1, ErrorKind::InvalidArgument, "roots of a constant polynomial");
  const auto& c = u.coeffs();
  std::vector<cplx> out;
  if (deg == 1) {
    out.push_back(-c[0] / c[1]);
    return out;
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  require(solver.info() == Eigen::Success, ErrorKind::NumericalFailure,
          "companion eigenvalue iteration did not converge");
  out.reserve(deg);
  for (int i = 0; i < deg; ++i) {
    cplx z = solver.eigenvalues()[i];
    // Newton polish, kept only while it reduces the residual.
    for (int it = 0; it < 3; ++it) {
      auto [v, d] = u.eval_with_derivative(z);
      if (d == cplx(0.0)) break;
      const cplx next = z - v / d;
      if (std::abs(u.eval(next)) >= std::abs(v)) break;
      z = next;
    }
    out.push_back(z);
  }
  return out;
}

// ----------------------------------------------------------------- DensePoly

DensePoly::DensePoly(const MultiPoly& p) {
  const std::size_t n = p.nvars();
  shape_.resize(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    shape_[i] = static_cast<std::size_t>(p.multidegree()[i]) + 1;
    total *= shape_[i];
  }
  c_.assign(total, 0.0);
  for (const auto& [e, c] : p.terms()) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx = idx * shape_[i] + static_cast<std::size_t>(e[i]);
    c_[idx] = c;
  }
}

DensePoly DensePoly::bind_front(cplx z) const {
  require(shape_.size() >= 2, ErrorKind::InvalidArgument, "cannot bind the last variable");
  DensePoly out;
  out.shape_.assign(shape_.begin() + 1, shape_.end());
  const std::size_t stride = c_.size() / shape_[0];
  out.c_.assign(stride, 0.0);
  for (std::size_t k = shape_[0]; k-- > 0;) {
    const cplx* row = c_.data() + k * stride;
    for (std::size_t j = 0; j < stride; ++j) out.c_[j] = out.c_[j] * z + row[j];
  }
  return out;
}

UniPoly DensePoly::as_uni() const {
  require(shape_.size() == 1, ErrorKind::InvalidArgument, "dense polynomial is not univariate");
  return UniPoly(c_);
}

cplx DensePoly::eval(std::span<const cplx> z) const {
  require(z.size() == shape_.size(), ErrorKind::DimensionMismatch, "evaluation point length mismatch");
  if (shape_.size() == 1) return UniPoly(c_).eval(z[0]);
  return bind_front(z[0]).eval(z.subspan(1));
}

MultiPoly permute_variables(const MultiPoly& p, std::span<const std::size_t> order) {
  const std::size_t n = p.nvars();
  require(order.size() == n, ErrorKind::DimensionMismatch, "permutation length mismatch");
  MultiPoly::TermMap t;
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> ne(n);
    for (std::size_t j = 0; j < n; ++j) ne[j] = e[order[j]];
    t.emplace(MultiIndex(std::move(ne)), c);
  }
  return MultiPoly(n, std::move(t));
}

}  // namespace riflab
