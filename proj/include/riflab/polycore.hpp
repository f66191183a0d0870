#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace riflab {

using cplx = std::complex<double>;

/// Exponent tuple (k_1, ..., k_n), all entries nonnegative.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  static MultiIndex zeros(std::size_t n) { return MultiIndex(std::vector<int>(n, 0)); }
  static MultiIndex unit(std::size_t n, std::size_t i);
  static MultiIndex filled(std::size_t n, int value) {
    return MultiIndex(std::vector<int>(n, value));
  }

  std::size_t size() const noexcept { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  std::span<const int> values() const noexcept { return e_; }
  int total() const noexcept;

  /// True when every component is >= the corresponding one of `other`.
  bool dominates(const MultiIndex& other) const;

  MultiIndex with(std::size_t i, int value) const;
  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; requires dominates(other).
  MultiIndex operator-(const MultiIndex& other) const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

  std::string str() const;

 private:
  std::vector<int> e_;
};

/// Dense univariate polynomial, coefficients in ascending degree order.
class UniPoly {
 public:
  UniPoly() = default;
  /// Trailing coefficients with |c| <= trim_tol * max|c| are dropped.
  explicit UniPoly(std::vector<cplx> coeffs, double trim_tol = 0.0);

  const std::vector<cplx>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  cplx eval(cplx z) const noexcept;
  /// p(z) and p'(z) in one Horner pass.
  std::pair<cplx, cplx> eval_with_derivative(cplx z) const noexcept;
  UniPoly derivative() const;

 private:
  std::vector<cplx> c_;
};

/// Sparse multivariate polynomial with complex coefficients.
class MultiPoly {
 public:
  using TermMap = std::map<MultiIndex, cplx>;

  explicit MultiPoly(std::size_t nvars = 1);
  /// Zero coefficients are dropped; every key must have length nvars.
  MultiPoly(std::size_t nvars, TermMap terms);

  static MultiPoly constant(std::size_t nvars, cplx c);
  static MultiPoly monomial(const MultiIndex& e, cplx c = 1.0);
  /// The coordinate function z_i (0-based).
  static MultiPoly variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  const MultiIndex& multidegree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  cplx coeff(const MultiIndex& e) const;
  double max_abs_coeff() const noexcept;

  cplx eval(std::span<const cplx> z) const;
  cplx operator()(std::span<const cplx> z) const { return eval(z); }

  MultiPoly operator+(const MultiPoly& other) const;
  MultiPoly operator-(const MultiPoly& other) const;
  MultiPoly operator*(const MultiPoly& other) const;
  MultiPoly operator-() const;
  friend MultiPoly operator*(cplx s, const MultiPoly& p);

  std::string str() const;

 private:
  void normalize();

  std::size_t n_;
  TermMap terms_;
  MultiIndex degree_;
};

/// z^d * conj(p(1/conj z)): c z^a maps to conj(c) z^(d-a). Requires d >= multidegree.
MultiPoly reflect(const MultiPoly& p, const MultiIndex& d);
inline MultiPoly reflect(const MultiPoly& p) { return reflect(p, p.multidegree()); }

/// Formal partial derivative in variable i (0-based).
MultiPoly partial_derivative(const MultiPoly& p, std::size_t i);

/// Univariate polynomial in z_k obtained by fixing the other n-1 variables to
/// zhat (in order, skipping k). Coefficients that cancel to within rounding of
/// the largest one are trimmed, so the result may have lower degree than
/// multidegree[k].
UniPoly slice(const MultiPoly& p, std::size_t k, std::span<const cplx> zhat);

/// All complex roots with multiplicity: companion-matrix eigenvalues followed by
/// Newton polishing.
std::vector<cplx> roots(const UniPoly& u);

/// Dense coefficient tensor used for repeated evaluation with one variable
/// substituted at a time (first variable first).
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(const MultiPoly& p);

  std::size_t nvars() const noexcept { return shape_.size(); }
  /// Substitutes z for the leading variable.
  DensePoly bind_front(cplx z) const;
  /// Valid only when nvars() == 1.
  UniPoly as_uni() const;
  cplx eval(std::span<const cplx> z) const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<cplx> c_;  // row-major, last variable fastest
};

/// Reorders variables so that new variable j is old variable order[j].
MultiPoly permute_variables(const MultiPoly& p, std::span<const std::size_t> order);

}  // namespace riflab
