#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace malt {

/// Worker count used by the engines. Results never depend on it.
unsigned thread_count();
void set_thread_count(unsigned threads);

/// Splits [0, count) into at most thread_count() contiguous chunks and runs
/// fn(chunk, begin, end) for each, chunk 0 on the calling thread. Callers
/// that collect per-chunk output and concatenate in chunk order get the same
/// sequence for every thread count.
template <class Fn>
std::size_t parallel_chunks(std::size_t count, Fn&& fn) {
  const std::size_t chunks =
      std::max<std::size_t>(1, std::min<std::size_t>(thread_count(), count));
  if (chunks == 1) {
    fn(std::size_t{0}, std::size_t{0}, count);
    return 1;
  }
  std::vector<std::exception_ptr> errors(chunks);
  auto bounds = [&](std::size_t c) { return count * c / chunks; };
  {
    std::vector<std::jthread> workers;
    workers.reserve(chunks - 1);
    for (std::size_t c = 1; c < chunks; ++c) {
      workers.emplace_back([&, c] {
        try {
          fn(c, bounds(c), bounds(c + 1));
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
    try {
      fn(std::size_t{0}, bounds(0), bounds(1));
    } catch (...) {
      errors[0] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return chunks;
}

/// Number of chunks parallel_chunks will use for `count` items.
inline std::size_t chunk_count(std::size_t count) {
  return std::max<std::size_t>(1, std::min<std::size_t>(thread_count(), count));
}

}  // namespace malt
