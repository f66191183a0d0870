#include "riflab/series.hpp"

#include <algorithm>

#include "riflab/errors.hpp"

namespace riflab {

CoeffBox::CoeffBox(MultiIndex orders, std::size_t max_coeffs) : orders_(std::move(orders)) {
  const std::size_t n = orders_.size();
  require(n >= 1, ErrorKind::InvalidArgument, "coefficient box needs at least one variable");
  strides_.assign(n, 1);
  double total = 1.0;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(orders_[i]) + 1.0;
  require(total <= static_cast<double>(max_coeffs), ErrorKind::ResourceLimit,
          "coefficient box " + orders_.str() + " exceeds the limit of " +
              std::to_string(max_coeffs) + " coefficients");
  for (std::size_t i = n - 1; i-- > 0;)
    strides_[i] = strides_[i + 1] * static_cast<std::size_t>(orders_[i + 1] + 1);
  data_.assign(static_cast<std::size_t>(total), cplx(0.0));
}

std::size_t CoeffBox::linear_index(std::span<const int> k) const noexcept {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k.size(); ++i) idx += static_cast<std::size_t>(k[i]) * strides_[i];
  return idx;
}

cplx CoeffBox::at(const MultiIndex& k) const {
  require(k.size() == nvars(), ErrorKind::DimensionMismatch, "index length mismatch");
  require(orders_.dominates(k), ErrorKind::InvalidArgument, "index " + k.str() + " outside box");
  return data_[linear_index(k.values())];
}

cplx CoeffBox::get(std::span<const int> k) const noexcept {
  if (k.size() != nvars()) return 0.0;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] < 0 || k[i] > orders_[i]) return 0.0;
  return data_[linear_index(k)];
}

CoeffBox CoeffBox::from_poly(const MultiPoly& f, const MultiIndex& orders, std::size_t max_coeffs) {
  require(f.nvars() == orders.size(), ErrorKind::DimensionMismatch, "box/polynomial dimension mismatch");
  CoeffBox box(orders, max_coeffs);
  for (const auto& [e, c] : f.terms())
    if (orders.dominates(e)) box.data_[box.linear_index(e.values())] = c;
  return box;
}

CoeffBox expand_ratio(const MultiPoly& q, const MultiPoly& p, const MultiIndex& orders,
                      std::size_t max_coeffs) {
  const std::size_t n = p.nvars();
  require(q.nvars() == n && orders.size() == n, ErrorKind::DimensionMismatch,
          "expand_ratio: variable counts differ");
  const cplx p0 = p.coeff(MultiIndex::zeros(n));
  require(p0 != cplx(0.0), ErrorKind::InvalidArgument, "expand_ratio: p(0) = 0");

  CoeffBox box(orders, max_coeffs);
  // Storage order is lexicographic, so k - j (j >= 0, j != 0) is always
  // visited before k.
  struct Shift {
    std::vector<int> e;
    std::size_t offset;
    cplx c;
  };
  std::vector<Shift> shifts;
  for (const auto& [e, c] : p.terms()) {
    if (e.total() == 0) continue;
    if (!orders.dominates(e)) continue;  // never fits inside the box
    shifts.push_back({std::vector<int>(e.values().begin(), e.values().end()),
                      box.linear_index(e.values()), c});
  }
  for (const auto& [e, c] : q.terms())
    if (orders.dominates(e)) box[box.linear_index(e.values())] = c;

  const cplx inv_p0 = 1.0 / p0;
  for_each_index(orders, [&](std::span<const int> k, std::size_t lin) {
    cplx acc = box[lin];
    for (const Shift& s : shifts) {
      bool fits = true;
      for (std::size_t i = 0; i < n; ++i)
        if (s.e[i] > k[i]) {
          fits = false;
          break;
        }
      if (fits) acc -= s.c * box[lin - s.offset];
    }
    box[lin] = acc * inv_p0;
  });
  return box;
}

std::vector<cplx> diagonal(const CoeffBox& box) {
  const std::size_t n = box.nvars();
  int m = box.orders()[0];
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, box.orders()[i]);
  std::size_t step = 0;
  for (std::size_t s : box.strides()) step += s;
  std::vector<cplx> out(static_cast<std::size_t>(m) + 1);
  for (int l = 0; l <= m; ++l) out[l] = box[static_cast<std::size_t>(l) * step];
  return out;
}

}  // namespace riflab
