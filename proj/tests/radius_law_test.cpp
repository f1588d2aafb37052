#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "percolab/radius_law.hpp"
#include "test_util.hpp"

using percolab::kInf;
using percolab::RadiusLaw;
using percolab::Rng;

TEST_CASE("spec strings round-trip") {
  for (const char* s : {"constant:2", "uniform:1:3", "pareto:3:1",
                        "mix:0.25*constant:1,0.75*pareto:2.5:0.5"}) {
    const RadiusLaw law = RadiusLaw::parse(s);
    const RadiusLaw again = RadiusLaw::parse(law.to_spec());
    CHECK(law.to_spec() == again.to_spec());
  }
  CHECK(RadiusLaw::parse("constant:2").to_spec() == "constant:2");
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS(RadiusLaw::parse("constant:0"));
  CHECK_THROWS(RadiusLaw::parse("uniform:3:1"));
  CHECK_THROWS(RadiusLaw::parse("pareto:-1:1"));
  CHECK_THROWS(RadiusLaw::parse("weird:1"));
  CHECK_THROWS(RadiusLaw::parse("constant:abc"));
  CHECK_THROWS(RadiusLaw::parse("mix:1*mix:1*constant:1"));
}

TEST_CASE("mixture weights are normalized") {
  const RadiusLaw law = RadiusLaw::parse("mix:2*constant:1,6*constant:3");
  REQUIRE(law.weights().size() == 2);
  CHECK(law.weights()[0] == doctest::Approx(0.25));
  CHECK(law.weights()[1] == doctest::Approx(0.75));
}

TEST_CASE("constant sampling is degenerate") {
  const RadiusLaw law = RadiusLaw::constant(2.0);
  Rng rng(1);
  for (int i = 0; i < 10; ++i) CHECK(law.sample(rng) == 2.0);
}

TEST_CASE("pareto empirical tail") {
  const RadiusLaw law = RadiusLaw::pareto(3.0, 1.0);
  Rng rng(11);
  int above = 0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i)
    if (law.sample(rng) > 2.0) ++above;
  CHECK(std::fabs(static_cast<double>(above) / n - 0.125) < 0.001);
}

TEST_CASE("uniform empirical mean") {
  const RadiusLaw law = RadiusLaw::uniform(1.0, 3.0);
  Rng rng(12);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) sum += law.sample(rng);
  CHECK(std::fabs(sum / n - 2.0) < 0.003);
}

TEST_CASE("tail moments in closed form") {
  const RadiusLaw c2 = RadiusLaw::constant(2.0);
  CHECK(c2.tail_moment(2.0, 1.0) == 4.0);
  CHECK(c2.tail_moment(2.0, 3.0) == 0.0);
  CHECK(c2.tail_moment(2.0, 2.0) == 4.0);  // closed interval keeps the atom

  const RadiusLaw p31 = RadiusLaw::pareto(3.0, 1.0);
  const double oracle =
      testutil::integrate([](double r) { return r * r * 3.0 * std::pow(r, -4.0); }, 2.0, 1e7,
                          1e-10) +
      3.0 * 1e-7;  // analytic remainder of 3/r^2 beyond 1e7
  CHECK(p31.tail_moment(2.0, 2.0) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(p31.tail_moment(2.0, 2.0) == doctest::Approx(oracle).epsilon(1e-6));

  CHECK(RadiusLaw::pareto(2.0, 1.0).tail_moment(2.0, 1.0) == kInf);
  CHECK(RadiusLaw::pareto(2.0, 1.0).tail_moment(2.5, 1.0) == kInf);
}

TEST_CASE("tail probabilities") {
  CHECK(RadiusLaw::constant(2.0).tail_prob(2.0) == 1.0);
  const RadiusLaw p31 = RadiusLaw::pareto(3.0, 1.0);
  CHECK(p31.tail_prob(2.0) == doctest::Approx(0.125).epsilon(1e-15));
  for (const char* s : {"constant:2", "uniform:1:3", "pareto:3:1"})
    CHECK(RadiusLaw::parse(s).tail_prob(0.0) == 1.0);
  CHECK(RadiusLaw::uniform(1.0, 3.0).tail_prob(2.0) == doctest::Approx(0.5));
}

TEST_CASE("tail moment is nonincreasing in the cutoff") {
  std::mt19937_64 eng(3);
  std::uniform_real_distribution<double> unif(0.0, 5.0);
  for (const char* s : {"uniform:0.5:2", "pareto:3.5:1", "mix:0.5*constant:1,0.5*pareto:4:2"}) {
    const RadiusLaw law = RadiusLaw::parse(s);
    for (int i = 0; i < 500; ++i) {
      double a = unif(eng), b = unif(eng);
      if (a > b) std::swap(a, b);
      for (double q : {0.0, 1.0, 2.0, 3.3})
        CHECK(law.tail_moment(q, a) >= law.tail_moment(q, b));
    }
  }
}

TEST_CASE("stochastic dominance orders pareto tail moments") {
  const RadiusLaw heavy = RadiusLaw::pareto(2.5, 1.0);
  const RadiusLaw light = RadiusLaw::pareto(4.0, 1.0);
  std::mt19937_64 eng(4);
  std::uniform_real_distribution<double> unif(0.0, 8.0);
  for (int i = 0; i < 500; ++i) {
    const double alpha = unif(eng);
    for (double q : {0.5, 1.0, 2.0}) {
      const double h = heavy.tail_moment(q, alpha);
      const double l = light.tail_moment(q, alpha);
      CHECK(h >= l);
    }
  }
}

TEST_CASE("tail moment dominates alpha^q times the tail probability") {
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> unif(0.0, 6.0);
  for (const char* s : {"constant:2", "uniform:1:3", "pareto:3:1",
                        "mix:0.3*uniform:0.5:1.5,0.7*pareto:5:2"}) {
    const RadiusLaw law = RadiusLaw::parse(s);
    for (int i = 0; i < 1000; ++i) {
      const double alpha = unif(eng);
      for (double q : {0.5, 1.0, 2.0, 3.0}) {
        const double lhs = law.tail_moment(q, alpha);
        const double rhs = std::pow(alpha, q) * law.tail_prob(alpha);
        CHECK(lhs >= rhs - 1e-12 * std::max(1.0, rhs));
      }
    }
  }
}

TEST_CASE("empirical moments match closed forms within three standard errors") {
  struct Case {
    const char* spec;
    double q;
  };
  for (const Case& c : {Case{"uniform:1:3", 2.0}, Case{"pareto:3:1", 2.5},
                        Case{"pareto:3:1", 1.0}, Case{"mix:0.5*constant:1,0.5*uniform:1:2", 2.0}}) {
    const RadiusLaw law = RadiusLaw::parse(c.spec);
    Rng rng(777);
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = std::pow(law.sample(rng), c.q);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean);
    const double se = std::sqrt(var / n);
    const double expected = law.tail_moment(c.q, 0.0);
    CAPTURE(c.spec);
    CHECK(std::fabs(mean - expected) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("pareto tail identity against quadrature") {
  const double gamma = 3.0;
  const RadiusLaw law = RadiusLaw::pareto(gamma, 1.0);
  for (int d : {1, 2}) {
    for (double alpha : {1.0, 1.7, 4.0, 25.0}) {
      const double expected = gamma / (gamma - d) * std::pow(alpha, d - gamma);
      CHECK(law.tail_moment(d, alpha) == doctest::Approx(expected).epsilon(1e-12));
      const double quad = testutil::integrate(
          [&](double r) { return std::pow(r, d) * gamma * std::pow(r, -gamma - 1.0); }, alpha,
          1e6, 1e-11) + gamma / (gamma - d) * std::pow(1e6, d - gamma);
      CHECK(law.tail_moment(d, alpha) == doctest::Approx(quad).epsilon(1e-6));
    }
  }
}

TEST_CASE("conditional sampling matches the conditioned tail") {
  const RadiusLaw law = RadiusLaw::parse("mix:0.5*uniform:1:3,0.5*pareto:3:1");
  Rng rng(31);
  const double t = 2.0;
  const int n = 200000;
  int above = 0;
  for (int i = 0; i < n; ++i) {
    const double v = law.sample_at_least(t, rng);
    CHECK(v >= t);
    if (v > 2.5) ++above;
  }
  const double expected = law.tail_prob(2.5) / law.tail_prob(t);
  CHECK(std::fabs(static_cast<double>(above) / n - expected) < 0.01);
}

TEST_CASE("plus power moment closed forms") {
  const RadiusLaw c = RadiusLaw::constant(2.0);
  CHECK(c.plus_power_moment(0.5, 2) == doctest::Approx(2.25));
  CHECK(c.plus_power_moment(2.5, 2) == 0.0);

  const RadiusLaw u = RadiusLaw::uniform(1.0, 3.0);
  const double quad_u = testutil::integrate(
      [](double r) { return (r - 0.5) * (r - 0.5) / 2.0; }, 1.0, 3.0, 1e-12);
  CHECK(u.plus_power_moment(0.5, 2) == doctest::Approx(quad_u).epsilon(1e-10));

  const RadiusLaw p = RadiusLaw::pareto(4.0, 1.0);
  const double quad_p = testutil::integrate(
      [](double r) { return (r - 0.5) * (r - 0.5) * 4.0 * std::pow(r, -5.0); }, 1.0, 1e6, 1e-12);
  CHECK(p.plus_power_moment(0.5, 2) == doctest::Approx(quad_p).epsilon(1e-6));
  CHECK(RadiusLaw::pareto(2.0, 1.0).plus_power_moment(0.5, 2) == kInf);

  // capped variant: integral stops at the cut
  const double quad_cap = testutil::integrate(
      [](double r) { return (r - 0.5) * (r - 0.5) * 4.0 * std::pow(r, -5.0); }, 1.0, 3.0, 1e-12);
  CHECK(p.plus_power_moment(0.5, 2, 3.0) == doctest::Approx(quad_cap).epsilon(1e-9));
}

TEST_CASE("min power moment") {
  const RadiusLaw p = RadiusLaw::pareto(2.0, 1.0);
  // E[min(R, c)^2] = 1 + 2 ln c for the unit-scale square-divergent tail
  for (double cut : {10.0, 100.0, 1e4})
    CHECK(p.min_power_moment(2, cut) == doctest::Approx(1.0 + 2.0 * std::log(cut)).epsilon(1e-12));
  CHECK(RadiusLaw::constant(2.0).min_power_moment(2, 10.0) == 4.0);
  CHECK(RadiusLaw::constant(2.0).min_power_moment(2, 1.5) == 2.25);
}
