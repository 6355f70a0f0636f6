#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "mwl/rng.hpp"

using namespace mwl;

TEST_CASE("identical seeds reproduce identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.uniform() == b.uniform());
  }
  Rng c(42), d(43);
  bool all_equal = true;
  for (int i = 0; i < 100; ++i) {
    if (c.uniform() != d.uniform()) all_equal = false;
  }
  CHECK_FALSE(all_equal);
}

TEST_CASE("derived substreams differ by label and index") {
  const std::uint64_t m = 7;
  CHECK(derive_seed(m, "pool") != derive_seed(m, "measures"));
  CHECK(derive_seed(m, 0) != derive_seed(m, 1));
  CHECK(derive_seed(m, "pool") == derive_seed(m, "pool"));
}

TEST_CASE("uniform lands in [0,1) and normal is roughly standard") {
  Rng rng(1);
  double sum = 0.0, sum2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sum2 / n - 1.0) < 0.03);
}

TEST_CASE("thread budget honors MWL_THREADS") {
  setenv("MWL_THREADS", "2", 1);
  CHECK(thread_budget(8) <= 2);
  CHECK(thread_budget(1) == 1);
  setenv("MWL_THREADS", "0", 1);
  CHECK(thread_budget(1) == 1);
  CHECK(thread_budget(0) >= 1);
  unsetenv("MWL_THREADS");
}
