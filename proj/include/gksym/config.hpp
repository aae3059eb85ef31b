#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace gksym {

// Raised when an expression grows past the configured term limit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised on mathematically invalid requests (division by zero, bad substitution, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Maximum number of terms any single canonical polynomial may hold.
std::size_t size_limit();
void set_size_limit(std::size_t n);

// Worker count used by the parallel drivers (table replay, conserved-vector replay).
unsigned thread_count();
void set_thread_count(unsigned n);

// Reads GKSYM_SIZE_LIMIT / GKSYM_THREADS; explicit setters called afterwards win.
void load_environment_overrides();

// Runs body(i) for i in [0, n) on up to thread_count() workers.
// Exceptions from workers are rethrown on the calling thread (first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gksym
