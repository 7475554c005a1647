#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace carmsq {

// threads == 0 means "use the hardware".
inline unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw != 0 ? hw : 1;
}

// Runs fn(block_index) for block_index = 0..n_blocks-1 on a worker pool.
// Blocks are claimed via an atomic counter, so the assignment of blocks to
// threads is arbitrary; callers keep results deterministic by storing one
// partial result per block index and combining them in index order.
// The first exception thrown by any worker is rethrown after the join.
template <class Fn>
void parallel_blocks(std::uint64_t n_blocks, unsigned threads, Fn&& fn) {
  if (n_blocks == 0) return;
  unsigned n_workers = resolve_threads(threads);
  if (n_workers > n_blocks) n_workers = static_cast<unsigned>(n_blocks);

  if (n_workers <= 1) {
    for (std::uint64_t i = 0; i < n_blocks; ++i) fn(i);
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_blocks) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n_blocks, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace carmsq
