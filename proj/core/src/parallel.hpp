#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace inhomog {

// Splits [0, count) into contiguous chunks, one worker per chunk. Each index
// derives its own random stream, so the partition never shows in the output.
inline void run_indexed(long long count, int threads,
                        const std::function<void(long long)>& body) {
  if (threads <= 1 || count < 4) {
    for (long long i = 0; i < count; ++i) body(i);
    return;
  }
  int n = static_cast<int>(std::min<long long>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (int w = 0; w < n; ++w) {
    long long lo = count * w / n, hi = count * (w + 1) / n;
    pool.emplace_back([lo, hi, &body] {
      for (long long i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace inhomog
