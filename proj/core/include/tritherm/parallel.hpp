#pragma once

#include <atomic>
#include <optional>
#include <thread>
#include <vector>

namespace tritherm {

// Deterministic block map-reduce. `map(i)` is computed for i in
// [0, nblocks); results are folded strictly in ascending block order, so the
// outcome is identical for any worker count; threads only change who
// computes which block, never the combination order or grouping.
template <typename T, typename Map, typename Fold>
void parallel_blocks(long nblocks, unsigned threads, Map&& map, Fold&& fold) {
  if (nblocks <= 0) return;
  unsigned workers = threads < 1 ? 1 : threads;
  if (static_cast<long>(workers) > nblocks) workers = static_cast<unsigned>(nblocks);

  if (workers == 1) {
    for (long i = 0; i < nblocks; ++i) fold(map(i));
    return;
  }

  std::vector<std::optional<T>> results(static_cast<size_t>(nblocks));
  std::atomic<long> next{0};
  std::exception_ptr first_error = nullptr;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        long i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= nblocks || failed.load(std::memory_order_relaxed)) return;
        try {
          results[static_cast<size_t>(i)].emplace(map(i));
        } catch (...) {
          if (!failed.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  for (long i = 0; i < nblocks; ++i) {
    fold(std::move(*results[static_cast<size_t>(i)]));
  }
}

}  // namespace tritherm
