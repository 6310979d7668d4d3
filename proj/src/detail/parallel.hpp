#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace acat::detail {

// Splits [begin, end) into contiguous chunks, one per worker. Each chunk runs
// body(chunk_begin, chunk_end); the first exception raised is rethrown.
template <typename Body>
void parallel_for(int begin, int end, int threads, Body&& body) {
  const int count = end - begin;
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    body(begin, end);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const int lo = begin + static_cast<int>(static_cast<long>(count) * w / workers);
    const int hi = begin + static_cast<int>(static_cast<long>(count) * (w + 1) / workers);
    pool.emplace_back([&, w, lo, hi] {
      try {
        body(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace acat::detail
