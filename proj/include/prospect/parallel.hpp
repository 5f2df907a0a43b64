#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace prospect {

// Runs body(i) for i in [0,n) on `workers` threads. Work items claim indices
// from a shared counter; callers own any per-index output slots, so results
// do not depend on scheduling.
template <typename F>
void parallel_for(long n, int workers, F&& body) {
  if (workers <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  int count = static_cast<int>(std::min<long>(workers, n));
  pool.reserve(count);
  for (int w = 0; w < count; ++w) {
    pool.emplace_back([&]() {
      for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace prospect
