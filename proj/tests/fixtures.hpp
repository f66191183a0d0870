// Test polynomials built directly from their terms.
#pragma once

#include "riflab/polycore.hpp"

namespace fixture {

using riflab::MultiIndex;
using riflab::MultiPoly;

/// n - z_1 - ... - z_n
inline MultiPoly linear_sum(std::size_t n) {
  MultiPoly::TermMap t;
  t[MultiIndex::zeros(n)] = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) t[MultiIndex::unit(n, i)] = -1.0;
  return MultiPoly(n, std::move(t));
}

inline MultiPoly p2() { return linear_sum(2); }
inline MultiPoly p3() { return linear_sum(3); }

/// (2 - z1 - z2) + (z3/2)(2 z1 z2 - z1 - z2); derivative in z3 stays bounded.
inline MultiPoly example3() {
  return MultiPoly(3, {{MultiIndex{0, 0, 0}, 2.0},
                       {MultiIndex{1, 0, 0}, -1.0},
                       {MultiIndex{0, 1, 0}, -1.0},
                       {MultiIndex{1, 1, 1}, 1.0},
                       {MultiIndex{1, 0, 1}, -0.5},
                       {MultiIndex{0, 1, 1}, -0.5}});
}

}  // namespace fixture
