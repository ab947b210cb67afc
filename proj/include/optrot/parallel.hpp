#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace optrot {

/// Runs fn(i) for i in [0, n) split statically over the given thread count.
/// Work items must write to disjoint locations; the static partition keeps
/// results independent of the thread count.
template <typename Fn>
void parallel_for_index(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t tid = 0; tid < nthreads; ++tid) {
    pool.emplace_back([&, tid] {
      for (std::size_t i = tid; i < n; i += nthreads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

} // namespace optrot
