#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace entrolab::par {

// Worker count: ENTROLAB_THREADS if set (clamped to >= 1), else the
// hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("ENTROLAB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// out[i] = fn(i) for i in [0, n). Splits the index range into contiguous
// blocks, one per worker; each slot is written by exactly one thread, so the
// result is identical to the sequential loop no matter the thread count.
template <class T, class Fn>
void map_indexed(size_t n, std::vector<T>& out, Fn&& fn) {
  out.resize(n);
  int workers = worker_count();
  if (workers <= 1 || n < 4096) {
    for (size_t i = 0; i < n; ++i) out[i] = fn(i);
    return;
  }
  size_t per = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    size_t lo = w * per, hi = std::min(n, lo + per);
    if (lo >= hi) break;
    pool.emplace_back([&out, &fn, lo, hi] {
      for (size_t i = lo; i < hi; ++i) out[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace entrolab::par
