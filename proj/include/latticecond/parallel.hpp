#ifndef LATTICECOND_PARALLEL_HPP
#define LATTICECOND_PARALLEL_HPP

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace latticecond {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

/// Runs fn(i) for i in [0, n) on `threads` workers with a static cyclic
/// schedule. Each index is processed exactly once; results must be written to
/// per-index slots so the outcome is independent of the schedule. The first
/// exception thrown by any worker is rethrown on the caller.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  pool.reserve(size_t(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < n; i += threads) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace latticecond

#endif
