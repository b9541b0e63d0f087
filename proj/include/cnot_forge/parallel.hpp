#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace cnot_forge {

inline int default_thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 4;
}

/// Static partition of [0, total) into at most `threads` contiguous chunks;
/// fn(chunk_index, begin, end) runs once per chunk. Chunk 0 is the earliest
/// range, so index-ordered reductions over chunk results stay deterministic.
template <class Fn>
void parallel_chunks(int total, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, total));
  if (threads == 1) {
    if (total > 0) fn(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  const int base = total / threads, extra = total % threads;
  int begin = 0;
  for (int t = 0; t < threads; ++t) {
    const int len = base + (t < extra ? 1 : 0);
    const int end = begin + len;
    pool.emplace_back([&fn, t, begin, end] { fn(t, begin, end); });
    begin = end;
  }
  for (auto& th : pool) th.join();
}

}  // namespace cnot_forge
