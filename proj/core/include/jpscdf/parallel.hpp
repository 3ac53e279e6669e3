#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace jps {

// Runs items [0, total) in fixed-size blocks over a worker pool. Workers
// claim whole blocks; the caller owns per-block result slots, so the final
// reduction (in block order) is independent of scheduling and thread count.
template <typename BlockFn>
void run_blocks(std::size_t total, std::size_t block_size, unsigned threads,
                const BlockFn& block_fn) {
  if (total == 0) return;
  const std::size_t n_blocks = (total + block_size - 1) / block_size;
  if (threads <= 1 || n_blocks == 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) {
      block_fn(b, b * block_size, std::min(total, (b + 1) * block_size));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      block_fn(b, b * block_size, std::min(total, (b + 1) * block_size));
    }
  };
  std::vector<std::thread> pool;
  const unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(threads, n_blocks));
  pool.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

inline unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace jps
