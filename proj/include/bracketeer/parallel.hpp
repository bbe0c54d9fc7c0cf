#pragma once

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bracketeer {

// Worker count: BRACKETEER_THREADS if set (clamped to [1,256]),
// otherwise the hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("BRACKETEER_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v < 1) v = 1;
    if (v > 256) v = 256;
    return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs f(chunk_index, begin, end) on contiguous chunks of [0, total).
// Chunk boundaries depend only on `total` and `workers`, so callers can
// merge per-chunk results in chunk order and get identical output for
// any worker count.
template <typename F>
void parallel_chunks(std::size_t total, F&& f, int workers = thread_count()) {
  if (total == 0) return;
  std::size_t nchunks = static_cast<std::size_t>(workers);
  if (nchunks > total) nchunks = total;
  if (nchunks <= 1) {
    f(std::size_t{0}, std::size_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nchunks);
  std::size_t per = total / nchunks, extra = total % nchunks, begin = 0;
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::size_t len = per + (c < extra ? 1 : 0);
    pool.emplace_back([&f, c, begin, len] { f(c, begin, begin + len); });
    begin += len;
  }
  for (auto& t : pool) t.join();
}

}  // namespace bracketeer
