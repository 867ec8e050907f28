#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "mean_squared.hpp"

using namespace sharpineq;
using testutil::rel_err;

TEST_CASE("single index and zero functional") {
  auto one = testutil::single_index(1, {1, 1});
  CHECK(taikov_constant(one, WeightVector({1, 1})).value.value() == 0.5);
  CHECK(hlp_constant(one, WeightVector({1, 1})).value.value() == 0.5);
  auto zero = testutil::single_index(0, {1, 1});
  CHECK(taikov_constant(zero, WeightVector({1, 1})).value.value() == 0.0);
  CHECK(hlp_constant(zero, WeightVector({1, 1})).value.value() == 0.0);
  auto vac = testutil::single_index(1, {0, 0});
  CHECK(taikov_constant(vac, WeightVector({1, 1})).value.is_infinite());
  CHECK(hlp_constant(vac, WeightVector({1, 1})).value.is_infinite());
}

TEST_CASE("torus taikov constant") {
  auto tor = testutil::torus1(0, {0, 1});
  auto r = taikov_constant(tor, WeightVector({1, 1}));
  REQUIRE(r.converged());
  CHECK(std::fabs(r.value.value() - testutil::kTorusTaikov) < 1e-8);
}

TEST_CASE("hlp constant on the torus") {
  auto t = testutil::torus1(1, {0, 2}, FunctionalKind::Norm);
  auto r = hlp_constant(t, WeightVector({1, 1}));
  CHECK(r.value.value() == 0.5);
  CHECK(r.argmax[0] == 1);
}

TEST_CASE("scaling and monotonicity in h") {
  auto tor = testutil::torus1(0, {0, 1, 2});
  WeightVector h({1, 0.5, 0.1});
  double base = taikov_constant(tor, h).value.value();
  double hb = hlp_constant(tor, h).value.value();
  for (double t : {0.01, 2.0, 300.0}) {
    CHECK(rel_err(taikov_constant(tor, h.scaled(t)).value.value() * t, base) < 1e-12);
    CHECK(rel_err(hlp_constant(tor, h.scaled(t)).value.value() * t, hb) < 1e-12);
  }
  for (std::size_t j = 0; j < 3; ++j) {
    auto v = h.values();
    v[j] *= 1.5;
    CHECK(taikov_constant(tor, WeightVector(v)).value.value() <= base);
    CHECK(hlp_constant(tor, WeightVector(v)).value.value() <= hb);
  }
}

TEST_CASE("extremal element on the torus") {
  auto tor = testutil::torus1(0, {0, 1});
  auto x = extremal_element(tor, WeightVector({1, 1}), 3);
  REQUIRE(x.indices.size() == 6u);
  for (std::size_t i = 0; i < x.indices.size(); ++i) {
    double n = double(std::llabs(x.indices[i][0]));
    CHECK(x.coef[i] == doctest::Approx(1.0 / (1 + n * n)).epsilon(1e-15));
  }
  auto dead = testutil::single_index(0, {0, 0});
  auto e = extremal_element(dead, WeightVector({1, 1}), 1);
  CHECK(e.indices.empty());
  auto one = testutil::single_index(1, {1, 1});
  auto f = extremal_element(one, WeightVector({1, 1}), 1);
  REQUIRE(f.coef.size() == 1u);
  CHECK(f.coef[0] == 0.5);
}

TEST_CASE("sharpness ratio equals the partial sum") {
  auto tor = testutil::torus1(0, {0, 1});
  WeightVector h({1, 1});
  auto r1 = sharpness_ratio(tor, h, 1);
  REQUIRE(r1.defined);
  CHECK(std::fabs(r1.value - 1.0) < 1e-15);
  double prev = 0;
  for (std::int64_t N : {1, 2, 5, 17, 100, 1000}) {
    double partial = 0;
    for (std::int64_t n = N; n >= 1; --n) partial += 2.0 / (1.0 + double(n) * n);
    auto r = sharpness_ratio(tor, h, N);
    CHECK(rel_err(r.value, partial) < 1e-12);
    CHECK(r.value > prev);
    prev = r.value;
  }
  CHECK(prev < testutil::kTorusTaikov);
}

TEST_CASE("sharpness ratio reports degenerate truncations") {
  auto dead = testutil::single_index(0, {1, 1});
  auto r = sharpness_ratio(dead, WeightVector({1, 1}), 1);
  CHECK_FALSE(r.defined);
  CHECK_FALSE(r.status.empty());
}

TEST_CASE("additive coefficients") {
  auto one = testutil::single_index(1, {1});
  auto a = additive_taikov(one, one, WeightVector({1}), WeightVector({1}));
  CHECK(a.coef_C.value() == 0.5);
  CHECK(a.coef_D.value() == 0.5);

  auto c = testutil::torus1(0, {0});
  auto d = testutil::torus1(0, {2});
  auto t = additive_taikov(c, d, WeightVector({1}), WeightVector({1}));
  // Σ_{n≥1} 2/(1+n⁴) and 2n⁴/(1+n⁴)², summed directly far enough that the tails are below 1e-12.
  long double sc = 0, sd = 0;
  for (long n = 200000; n >= 1; --n) {
    long double x = (long double)n * n * n * n;
    sc += 2 / ((1 + x) * (1 + x));
    sd += 2 * x / ((1 + x) * (1 + x));
  }
  CHECK(rel_err(t.coef_C.value(), std::sqrt(double(sc))) < 1e-9);
  CHECK(rel_err(t.coef_D.value(), std::sqrt(double(sd))) < 1e-9);

  auto merged = testutil::torus1(0, {0, 2});
  double K = taikov_constant(merged, WeightVector({1, 1})).value.value();
  CHECK(t.coef_C.value() * t.coef_C.value() + t.coef_D.value() * t.coef_D.value() <= K * (1 + 1e-12));

  auto zero_d = testutil::single_index(1, {0});
  auto z = additive_taikov(one, zero_d, WeightVector({1}), WeightVector({1}));
  CHECK(z.coef_D.value() == 0.0);
  CHECK(rel_err(z.coef_C.value(), std::sqrt(taikov_constant(one, WeightVector({1})).value.value())) < 1e-15);
}

TEST_CASE("violation scans") {
  auto one = testutil::single_index(1, {1, 1});
  auto s = random_violation_scan(one, WeightVector({1, 1}), 50, 3);
  CHECK(std::fabs(s.max_ratio - 0.5) < 1e-15);
  CHECK(random_violation_scan(one, WeightVector({1, 1}), 0, 3).max_ratio == 0.0);

  auto tor = testutil::torus1(0, {0, 1});
  auto t = random_violation_scan(tor, WeightVector({1, 1}), 500, 42);
  CHECK(t.max_ratio <= testutil::kTorusTaikov * (1 + 1e-10));
  CHECK(t.witness_trial >= 0);
  auto again = random_violation_scan(tor, WeightVector({1, 1}), 500, 42);
  CHECK(again.max_ratio == t.max_ratio);
  CHECK(again.witness_trial == t.witness_trial);
}

TEST_CASE("hlp below taikov for single-index functionals") {
  auto one = testutil::single_index(2, {1, 3});
  WeightVector h({0.4, 1.1});
  CHECK(hlp_constant(one, h).value.value() <= taikov_constant(one, h).value.value());
}
