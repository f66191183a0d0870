#include "riflab/parallel.hpp"

#include <atomic>
#include <thread>

namespace riflab {

namespace {
std::atomic<unsigned> g_threads{0};
}

unsigned worker_threads() {
  const unsigned n = g_threads.load();
  if (n != 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_worker_threads(unsigned n) { g_threads.store(n); }

void for_each_block(std::size_t blocks, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(worker_threads(), blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> jobs;
  jobs.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&] {
      for (std::size_t b = next++; b < blocks; b = next++) body(b);
    }));
  }
  // get() rethrows the first failure after all workers have stopped.
  for (auto& j : jobs) j.wait();
  for (auto& j : jobs) j.get();
}

}  // namespace riflab
