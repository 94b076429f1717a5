// Deterministic chunked parallelism for sweeps over [1, N].
//
// The range is cut into fixed-size chunks (a function of N only, never of
// the worker count); workers grab chunks by atomic index; per-chunk results
// land in a slot vector and are merged in chunk order. The merged result is
// therefore identical for 1 worker, k workers, or a plain sequential loop.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace haltlab {

inline constexpr std::uint64_t kSweepChunkSize = 4096;

// Applies work(lo, hi) to every chunk [lo, hi] covering [1, n] and returns
// the per-chunk results in chunk order. workers = 0 picks the hardware
// concurrency. Exceptions thrown by work are rethrown on the calling thread.
template <typename Part, typename Work>
std::vector<Part> run_chunked(std::uint64_t n, unsigned workers, Work&& work) {
  const std::uint64_t chunks =
      n / kSweepChunkSize + (n % kSweepChunkSize != 0 ? 1 : 0);
  std::vector<std::optional<Part>> slots(chunks);
  if (workers == 0) workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (chunks < workers) workers = static_cast<unsigned>(chunks ? chunks : 1);

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto drain = [&] {
    for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::uint64_t lo = c * kSweepChunkSize + 1;
      const std::uint64_t hi = std::min(n, lo + kSweepChunkSize - 1);
      try {
        slots[c].emplace(work(lo, hi));
      } catch (...) {
        {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<Part> parts;
  parts.reserve(chunks);
  for (auto& slot : slots) parts.push_back(std::move(*slot));
  return parts;
}

}  // namespace haltlab
