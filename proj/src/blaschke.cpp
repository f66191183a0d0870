#include "riflab/blaschke.hpp"

#include <algorithm>
#include <cmath>

#include "riflab/errors.hpp"
#include "riflab/summation.hpp"

namespace riflab {

BlaschkeProduct::BlaschkeProduct(std::vector<cplx> zeros, cplx unimodular)
    : zeros_(std::move(zeros)), c_(unimodular) {
  for (const cplx& a : zeros_)
    require(std::abs(a) < 1.0, ErrorKind::InvalidArgument,
            "Blaschke zeros must lie in the open unit disk");
  require(std::abs(std::abs(c_) - 1.0) < 1e-12, ErrorKind::InvalidArgument,
          "Blaschke constant must be unimodular");
}

double BlaschkeProduct::epsilon() const noexcept {
  double e = 1.0;
  for (const cplx& a : zeros_) e = std::min(e, 1.0 - std::abs(a));
  return e;
}

double BlaschkeProduct::max_zero_modulus() const noexcept {
  double m = 0.0;
  for (const cplx& a : zeros_) m = std::max(m, std::abs(a));
  return m;
}

cplx BlaschkeProduct::eval(cplx z) const noexcept {
  cplx v = c_;
  for (const cplx& a : zeros_) v *= (z - a) / (1.0 - std::conj(a) * z);
  return v;
}

std::vector<cplx> BlaschkeProduct::taylor(int order) const {
  require(order >= 0, ErrorKind::InvalidArgument, "negative truncation order");
  std::vector<cplx> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = c_;
  std::vector<cplx> f(c.size());
  for (const cplx& a : zeros_) {
    // (1 - conj(a) z) c = (z - a) f
    std::swap(f, c);
    const cplx ab = std::conj(a);
    c[0] = -a * f[0];
    for (std::size_t k = 1; k < c.size(); ++k) c[k] = ab * c[k - 1] + f[k - 1] - a * f[k];
  }
  return c;
}

int auto_truncation(const BlaschkeProduct& b, double scale) {
  return std::max(64, static_cast<int>(std::ceil(scale / b.epsilon())));
}

DNorm1D d_alpha_norm_1d(const BlaschkeProduct& b, double p, int order, double rel_tol) {
  require(order >= 1, ErrorKind::InvalidArgument, "truncation order must be >= 1");
  const std::vector<cplx> c = b.taylor(order);
  CompensatedSum acc;
  for (int k = 0; k <= order; ++k) acc += std::pow(1.0 + k, p) * std::norm(c[k]);

  DNorm1D out{acc.value(), 0.0, order};
  const double rho = b.max_zero_modulus();
  if (b.degree() > 0 && rho > 0.0) {
    // |b(N+j)| <~ B rho^j (1 + j/N)^(deg-1), B the envelope of the last coefficients.
    double env = 0.0;
    const int d = static_cast<int>(b.degree());
    for (int k = std::max(0, order - d); k <= order; ++k) env = std::max(env, std::abs(c[k]));
    CompensatedSum tail;
    double r2j = 1.0;
    for (long j = 1;; ++j) {
      r2j *= rho * rho;
      const double growth = std::pow(1.0 + static_cast<double>(j) / order, 2.0 * (d - 1));
      const double term = std::pow(1.0 + order + j, p) * env * env * r2j * growth;
      tail += term;
      if (term < 1e-18 * tail.value() || j > 100000000L) break;
    }
    out.tail = tail.value();
  }
  if (out.tail > rel_tol * out.value)
    fail(ErrorKind::Truncation, "Blaschke D_p tail bound " + std::to_string(out.tail) +
                                    " exceeds tolerance at order " + std::to_string(order) +
                                    "; a larger order is required");
  return out;
}

double onedim_ratio(const BlaschkeProduct& b, double p) {
  require(p > 0.0, ErrorKind::InvalidArgument, "onedim_ratio needs p > 0");
  const DNorm1D nrm = d_alpha_norm_1d(b, p, auto_truncation(b));
  return nrm.value * std::pow(b.epsilon(), p - 1.0);
}

}  // namespace riflab
