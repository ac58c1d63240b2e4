#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <type_traits>
#include <vector>

namespace cmsz {

/// Number of worker threads to use when the caller asks for `requested`
/// (0 means all hardware threads).
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Evaluates f(0), ..., f(n-1) on up to `threads` workers. The result vector
/// is in index order regardless of scheduling.
template <typename F>
auto parallel_map(std::size_t n, unsigned threads, F f) -> std::vector<std::invoke_result_t<F, std::size_t>> {
  using T = std::invoke_result_t<F, std::size_t>;
  std::vector<T> out(n);
  unsigned workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace cmsz
