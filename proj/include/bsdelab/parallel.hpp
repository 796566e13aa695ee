#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

namespace bsdelab {

/// 0 means "use every hardware thread"; anything else is taken literally.
inline int resolve_thread_count(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(begin, end) over a static partition of [0, count) on up to
/// `threads` std::threads (the calling thread handles the first chunk).
///
/// Contract for callers: fn must write only to slots indexed by its own
/// [begin, end) range and must not throw. Because the partition is static and
/// writes are disjoint, results are identical for every thread count.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (count == 0) return;
  const int want = std::max(1, threads);
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(want), count);
  if (workers == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t lo = std::min(count, w * chunk);
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  fn(std::size_t{0}, std::min(count, chunk));
  for (std::thread& t : pool) t.join();
}

}  // namespace bsdelab
