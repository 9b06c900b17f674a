#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace gammareg {

namespace detail {
inline std::atomic<int>& thread_count_ref() {
  static std::atomic<int> n{1};
  return n;
}
}  // namespace detail

/// Process-wide worker count for parallelizable scans. Defaults to 1, which
/// guarantees bitwise-reproducible output; parallel runs write disjoint slots
/// so per-element results are identical, only evaluation order changes.
inline void set_thread_count(int n) { detail::thread_count_ref() = n < 1 ? 1 : n; }
inline int thread_count() { return detail::thread_count_ref(); }

namespace detail {

/// Chunked parallel loop over [0, n); fn(i) must write only to slot i.
template <typename Fn>
void parallel_for(std::size_t n, Fn fn) {
  int workers = thread_count();
  if (workers <= 1 || n < 256) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t chunk = (n + static_cast<std::size_t>(workers) - 1) / static_cast<std::size_t>(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = static_cast<std::size_t>(w) * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([=]() {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail
}  // namespace gammareg
