#include <doctest.h>

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "causalcell/parallel.hpp"

using causalcell::parallel_for;
using causalcell::thread_count;

TEST_CASE("thread_count reads the environment") {
  unsetenv("CAUSALCELL_THREADS");
  CHECK(thread_count() == 1);
  setenv("CAUSALCELL_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  setenv("CAUSALCELL_THREADS", "zero", 1);
  CHECK(thread_count() == 1);
  setenv("CAUSALCELL_THREADS", "0", 1);
  CHECK(thread_count() == 1);
  unsetenv("CAUSALCELL_THREADS");
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  setenv("CAUSALCELL_THREADS", "4", 1);
  std::vector<int> hits(1001, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  unsetenv("CAUSALCELL_THREADS");
}
