#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "oracle.hpp"
#include "spectral_core.hpp"

using namespace sharpineq;
using testutil::rel_err;

TEST_CASE("combined weight") {
  auto ones = testutil::single_index(1, {1, 1});
  CHECK(combined_weight(ones, WeightVector({1, 1}), Index(1)) == 2.0);
  auto zeros = testutil::single_index(1, {0, 0});
  CHECK(combined_weight(zeros, WeightVector({3, 7}), Index(1)) == 0.0);
  auto tor = testutil::torus1(0, {0, 2});
  CHECK(combined_weight(tor, WeightVector({1, 2}), Index(3)) == 163.0);
}

TEST_CASE("combined weight rejects foreign indices and bad h") {
  auto tor = testutil::torus1(0, {0, 2});
  CHECK_THROWS_AS(combined_weight(tor, WeightVector({1, 2}), Index(0)), DomainError);
  CHECK_THROWS(combined_weight(tor, WeightVector({1}), Index(1)));
  CHECK_THROWS(WeightVector({1, -1}));
  auto one = testutil::single_index(1, {1, 1});
  CHECK_THROWS_AS(combined_weight(one, WeightVector({1, 1}), Index(2)), DomainError);
}

TEST_CASE("combined weight homogeneity") {
  auto tor = testutil::torus1(1, {0, 1, 3});
  WeightVector h({0.3, 1.7, 0.02});
  for (double t : {1e-3, 0.5, 3.0, 1e4}) {
    for (std::int64_t n : {1, 2, 7, 50, 999}) {
      double a = combined_weight(tor, h.scaled(t), Index(n));
      double b = t * combined_weight(tor, h, Index(n));
      CHECK(rel_err(a, b) <= 1e-14);
    }
  }
}

TEST_CASE("tilde sum conventions") {
  auto unit = IndexSet::explicit_list({Index(1)});
  auto r = tilde_sum([](const Index&) { return 1.0; }, [](const Index&) { return 0.0; }, unit);
  CHECK(r.value.is_infinite());
  CHECK(r.status == SeriesStatus::Infinite);
  auto z = tilde_sum([](const Index&) { return 0.0; },
                     [](const Index& n) { return 1.0 + double(n[0]) * n[0]; },
                     IndexSet::positive_integers());
  CHECK(z.value.is_finite());
  CHECK(z.value.value() == 0.0);
  // 0/0 terms are skipped.
  auto skip = tilde_sum([](const Index&) { return 0.0; }, [](const Index&) { return 0.0; }, unit);
  CHECK(skip.value.value() == 0.0);
}

TEST_CASE("tilde sum of 1/(1+n^2) over n >= 1, doubled") {
  auto r = tilde_sum([](const Index&) { return 1.0; },
                     [](const Index& n) { return 1.0 + double(n[0]) * n[0]; },
                     IndexSet::nonzero_lattice(1), TailPolicy{}, true);
  REQUIRE(r.converged());
  CHECK(rel_err(r.value.value(), testutil::kTorusTaikov) <= 1e-10);
  CHECK(rel_err(testutil::kTorusTaikov, M_PI / std::tanh(M_PI) - 1) <= 1e-14);
}

TEST_CASE("tilde sum equals the plain sum when all denominators are positive") {
  auto r = tilde_sum([](const Index&) { return 1.0; },
                     [](const Index& n) { return double(n[0]) * n[0]; },
                     IndexSet::positive_integers());
  REQUIRE(r.converged());
  CHECK(rel_err(r.value.value(), oracle::zeta(2)) <= 1e-10);
}

TEST_CASE("tilde sum partial sums are nondecreasing") {
  TailPolicy tol;
  tol.rel = 1e-14;
  tol.max_level = 12;
  auto r = tilde_sum([](const Index&) { return 1.0; },
                     [](const Index& n) { return std::pow(double(n[0]), 1.5); },
                     IndexSet::positive_integers(), tol);
  REQUIRE(r.curve.size() >= 2);
  for (std::size_t i = 1; i < r.curve.size(); ++i) CHECK(r.curve[i].second >= r.curve[i - 1].second);
}

TEST_CASE("infinite propagates to all later levels") {
  // Zero denominator at n = 40, past the first level.
  TailPolicy tol;
  tol.max_level = 8;
  auto den = [](const Index& n) { return n[0] == 40 ? 0.0 : double(n[0]) * n[0]; };
  auto r = tilde_sum([](const Index&) { return 1.0; }, den, IndexSet::positive_integers(), tol);
  CHECK(r.value.is_infinite());
  for (int L = 3; L <= 8; ++L) {
    tol.max_level = L;
    CHECK(tilde_sum([](const Index&) { return 1.0; }, den, IndexSet::positive_integers(), tol)
              .value.is_infinite());
  }
}

TEST_CASE("divergent series is not reported finite") {
  auto r = tilde_sum([](const Index&) { return 1.0; }, [](const Index& n) { return double(n[0]); },
                     IndexSet::positive_integers());
  CHECK_FALSE(r.converged());
  CHECK(r.status != SeriesStatus::Converged);
}

TEST_CASE("tilde sup") {
  auto unit = IndexSet::explicit_list({Index(1)});
  CHECK(tilde_sup([](const Index&) { return 1.0; }, [](const Index&) { return 0.0; }, unit)
            .value.is_infinite());
  CHECK(tilde_sup([](const Index&) { return 0.0; }, [](const Index&) { return 1.0; },
                  IndexSet::positive_integers())
            .value.value() == 0.0);
  auto r = tilde_sup([](const Index& n) { return double(n[0]) * n[0]; },
                     [](const Index& n) { double x = double(n[0]); return 1 + x * x * x * x; },
                     IndexSet::positive_integers());
  CHECK(r.value.value() == 0.5);
  CHECK(r.argmax[0] == 1);
}

TEST_CASE("index sets and truncation") {
  auto lat = IndexSet::nonzero_lattice(2);
  CHECK(lat.contains(Index{1, -3}));
  CHECK_FALSE(lat.contains(Index{0, 2}));
  CHECK(lat.truncation(2).size() == 16u);
  auto pos = IndexSet::positive_integers();
  CHECK(pos.truncation(5).size() == 5u);
  CHECK(pos.radius(0) == IndexSet::kBaseRadius);
  CHECK(pos.radius(3) == 8 * IndexSet::kBaseRadius);
  auto ex = IndexSet::explicit_list({Index(4), Index(9)});
  CHECK(ex.finite());
  CHECK(ex.contains(Index(9)));
  CHECK_FALSE(ex.contains(Index(5)));
}

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(0x1p-53);
  s.add(-1.0);
  CHECK(s.value() == 1000 * 0x1p-53);
}
