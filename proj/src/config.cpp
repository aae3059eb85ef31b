#include "gksym/config.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gksym {

namespace {
std::atomic<std::size_t> g_size_limit{1000000};
std::atomic<unsigned> g_threads{0};
}  // namespace

std::size_t size_limit() { return g_size_limit.load(std::memory_order_relaxed); }
void set_size_limit(std::size_t n) { g_size_limit.store(n == 0 ? 1 : n); }

unsigned thread_count() {
  unsigned n = g_threads.load(std::memory_order_relaxed);
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}
void set_thread_count(unsigned n) { g_threads.store(n); }

void load_environment_overrides() {
  if (const char* s = std::getenv("GKSYM_SIZE_LIMIT")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) set_size_limit(static_cast<std::size_t>(v));
  }
  if (const char* s = std::getenv("GKSYM_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(s, &end, 10);
    if (end != s && v > 0) set_thread_count(static_cast<unsigned>(v));
  }
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace gksym
