#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace cspin {

/// Chunked index-parallel loop; every index writes only its own slot, so the
/// result is deterministic independent of the worker count.  threads <= 1
/// runs inline.
inline void parallel_for(int n, int threads,
                         const std::function<void(int)>& body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || n < 2 * threads) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([=, &body] {
      for (int i = w; i < n; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace cspin
