#pragma once

// Deterministic batch parallelism: a static chunked parallel-for whose callers
// write results into preallocated per-index slots, so aggregation order never
// depends on the worker count.

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace deciderlab {

inline unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Calls fn(i) exactly once for every i in [0, n). fn must only touch state
// owned by index i.
template <typename Fn>
void parallel_for_index(std::uint64_t n, unsigned workers, Fn&& fn) {
  workers = resolve_workers(workers);
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (workers > n) workers = static_cast<unsigned>(n);

  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::uint64_t chunk = n / workers;
  std::uint64_t extra = n % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    pool.emplace_back([&, begin, end] {
      try {
        for (std::uint64_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
    begin = end;
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace deciderlab
