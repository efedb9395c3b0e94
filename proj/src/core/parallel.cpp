#include "malt/parallel.hpp"

#include <atomic>

namespace malt {

namespace {
std::atomic<unsigned> g_threads{1};
}

unsigned thread_count() { return g_threads.load(std::memory_order_relaxed); }

void set_thread_count(unsigned threads) {
  g_threads.store(threads == 0 ? 1 : threads, std::memory_order_relaxed);
}

}  // namespace malt
