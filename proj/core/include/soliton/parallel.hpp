#pragma once

// Minimal fork-join loop over an index range. Each index is processed on
// exactly one worker, so results written per index are deterministic.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace soliton {

/// SOLITON_TBP_THREADS if set to a positive integer, else the hardware count.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("SOLITON_TBP_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
      // fall through to the hardware count
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {
inline bool& in_parallel_region() {
  thread_local bool flag = false;
  return flag;
}
}  // namespace detail

/// Calls f(i) for i in [0, n). The first exception thrown by any call is
/// rethrown after all workers stop. Nested calls run serially on the
/// calling worker.
template <class F>
void parallel_for(std::size_t n, F&& f, std::size_t workers = worker_count()) {
  workers = std::min(workers, n);
  if (workers <= 1 || detail::in_parallel_region()) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    detail::in_parallel_region() = true;
    struct Reset {
      ~Reset() { detail::in_parallel_region() = false; }
    } reset;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace soliton
