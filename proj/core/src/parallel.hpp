#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace xnr::detail {

inline unsigned worker_count(unsigned requested, std::uint64_t work) {
  unsigned t = requested == 0 ? std::max(1U, std::thread::hardware_concurrency()) : requested;
  // Below this size the thread start-up dominates.
  if (work < (std::uint64_t{1} << 12)) t = 1;
  return static_cast<unsigned>(std::min<std::uint64_t>(t, work == 0 ? 1 : work));
}

/// True iff pred(i) holds for some i in [0, count). Workers take contiguous
/// blocks and stop early once any of them succeeds; the answer does not
/// depend on the partition.
template <typename Pred>
bool parallel_any(std::uint64_t count, unsigned threads, Pred pred) {
  const unsigned workers = worker_count(threads, count);
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) {
      if (pred(i)) return true;
    }
    return false;
  }
  std::atomic<bool> found{false};
  std::vector<std::thread> pool;
  const std::uint64_t block = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * block;
    const std::uint64_t hi = std::min(count, lo + block);
    pool.emplace_back([&, lo, hi] {
      for (std::uint64_t i = lo; i < hi && !found.load(std::memory_order_relaxed); ++i) {
        if (pred(i)) {
          found.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  return found.load();
}

/// Indices i in [0, count) with keep(i), in increasing order.
template <typename Keep>
std::vector<std::uint64_t> parallel_filter(std::uint64_t count, unsigned threads, Keep keep) {
  const unsigned workers = worker_count(threads, count);
  std::vector<std::vector<std::uint64_t>> parts(workers);
  const std::uint64_t block = (count + workers - 1) / workers;
  auto run = [&](unsigned w) {
    const std::uint64_t lo = w * block;
    const std::uint64_t hi = std::min(count, lo + block);
    for (std::uint64_t i = lo; i < hi; ++i) {
      if (keep(i)) parts[w].push_back(i);
    }
  };
  if (workers <= 1) {
    run(0);
    return std::move(parts[0]);
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  for (auto& t : pool) t.join();
  std::vector<std::uint64_t> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace xnr::detail
