#include <doctest.h>

#include <atomic>
#include <cstdlib>

#include "gksym/config.hpp"
#include "gksym/dsl.hpp"

using namespace gksym;

TEST_CASE("size limit raises ResourceError") {
  const std::size_t saved = size_limit();
  set_size_limit(20);
  CHECK_THROWS_AS(parse_poly("(u_x + u_y + u_t + u + x + y + t)^3"), ResourceError);
  set_size_limit(saved);
  CHECK_NOTHROW(parse_poly("(u_x + u_y + u_t + u + x + y + t)^3"));
}

TEST_CASE("environment overrides and explicit setters") {
  const unsigned saved = thread_count();
  setenv("GKSYM_THREADS", "3", 1);
  load_environment_overrides();
  CHECK(thread_count() == 3);
  set_thread_count(2);
  CHECK(thread_count() == 2);
  unsetenv("GKSYM_THREADS");
  set_thread_count(saved);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw DomainError("boom");
                  }),
                  DomainError);
}
