#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <future>
#include <vector>

namespace riflab {

/// Number of worker threads used by the parallel reductions. Zero means
/// hardware concurrency. Results never depend on this value: work is always
/// split into the same blocks and combined in block order.
unsigned worker_threads();
void set_worker_threads(unsigned n);

/// Runs body(b) for every block b in [0, blocks) on the worker pool.
void for_each_block(std::size_t blocks, const std::function<void(std::size_t)>& body);

/// Splits [0, count) into a fixed number of contiguous blocks, independent of
/// the thread count.
struct BlockRange {
  std::size_t begin;
  std::size_t end;
};

inline BlockRange block_range(std::size_t count, std::size_t blocks, std::size_t b) {
  const std::size_t base = count / blocks;
  const std::size_t extra = count % blocks;
  const std::size_t begin = b * base + std::min(b, extra);
  return {begin, begin + base + (b < extra ? 1 : 0)};
}

}  // namespace riflab
