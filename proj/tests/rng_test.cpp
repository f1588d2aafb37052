#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "percolab/rng.hpp"
#include "test_util.hpp"

using percolab::Rng;

TEST_CASE("stream derivation is the documented two-round mix") {
  const std::uint64_t master = 42;
  const std::uint64_t i = 7;
  std::uint64_t z = master ^ (i + 1) * 0x9E3779B97F4A7C15ull;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  CHECK(Rng::stream_seed(master, i) == z);
}

TEST_CASE("streams are reproducible and distinct") {
  Rng a = Rng::stream(123, 0);
  Rng b = Rng::stream(123, 0);
  Rng c = Rng::stream(123, 1);
  bool distinct = false;
  for (int i = 0; i < 16; ++i) {
    const std::uint64_t va = a.next_u64();
    CHECK(va == b.next_u64());
    distinct = distinct || va != c.next_u64();
  }
  CHECK(distinct);
}

TEST_CASE("uniform moments") {
  Rng rng(2024);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(std::fabs(sum / n - 0.5) < 0.005);
  CHECK(std::fabs(sum2 / n - 1.0 / 3.0) < 0.005);
}

TEST_CASE("gaussian moments") {
  Rng rng(7);
  const int n = 200000;
  double s1 = 0, s2 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    s1 += g;
    s2 += g * g;
    s4 += g * g * g * g;
  }
  CHECK(std::fabs(s1 / n) < 0.02);
  CHECK(std::fabs(s2 / n - 1.0) < 0.02);
  CHECK(std::fabs(s4 / n - 3.0) < 0.1);
}

TEST_CASE("poisson goodness of fit across both sampler branches") {
  for (double mu : {0.5, 5.0, 29.5, 30.5, 50.0, 300.0}) {
    CAPTURE(mu);
    Rng rng(static_cast<std::uint64_t>(mu * 1000) + 11);
    std::vector<std::uint64_t> draws(100000);
    for (auto& v : draws) v = rng.poisson(mu);
    CHECK(testutil::poisson_gof_pvalue(draws, mu) > 1e-3);
  }
}

TEST_CASE("poisson mean zero") {
  Rng rng(1);
  CHECK(rng.poisson(0.0) == 0);
}
