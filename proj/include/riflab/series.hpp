#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "riflab/polycore.hpp"

namespace riflab {

/// Default cap on the number of stored coefficients (16 bytes each).
inline constexpr std::size_t kDefaultMaxCoeffs = std::size_t{1} << 25;

/// Dense Taylor coefficients a(k) for k in [0,N_1] x ... x [0,N_n].
/// Row-major with the last variable fastest.
class CoeffBox {
 public:
  CoeffBox() = default;
  CoeffBox(MultiIndex orders, std::size_t max_coeffs = kDefaultMaxCoeffs);

  std::size_t nvars() const noexcept { return orders_.size(); }
  const MultiIndex& orders() const noexcept { return orders_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const std::size_t> strides() const noexcept { return strides_; }

  cplx& operator[](std::size_t linear) { return data_[linear]; }
  const cplx& operator[](std::size_t linear) const { return data_[linear]; }
  cplx at(const MultiIndex& k) const;
  /// Zero outside the box.
  cplx get(std::span<const int> k) const noexcept;
  std::size_t linear_index(std::span<const int> k) const noexcept;
  std::span<const cplx> data() const noexcept { return data_; }

  /// Coefficients of a polynomial, truncated to the box.
  static CoeffBox from_poly(const MultiPoly& f, const MultiIndex& orders,
                            std::size_t max_coeffs = kDefaultMaxCoeffs);

 private:
  MultiIndex orders_;
  std::vector<std::size_t> strides_;
  std::vector<cplx> data_;
};

/// Taylor coefficients of q/p on the box from the convolution recurrence
/// a(k) = (q_k - sum_{0 < j <= k} p_j a(k-j)) / p(0).
CoeffBox expand_ratio(const MultiPoly& q, const MultiPoly& p, const MultiIndex& orders,
                      std::size_t max_coeffs = kDefaultMaxCoeffs);

/// a(l, ..., l) for l = 0 .. min(orders).
std::vector<cplx> diagonal(const CoeffBox& box);

/// Visits every multi-index of the box in storage order.
template <typename Fn>
void for_each_index(const MultiIndex& orders, Fn&& fn) {
  const std::size_t n = orders.size();
  std::vector<int> k(n, 0);
  std::size_t linear = 0;
  while (true) {
    fn(std::span<const int>(k), linear);
    ++linear;
    std::size_t i = n;
    while (i-- > 0) {
      if (k[i] < orders[i]) {
        ++k[i];
        break;
      }
      k[i] = 0;
      if (i == 0) return;
    }
  }
}

}  // namespace riflab
