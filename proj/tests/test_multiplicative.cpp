#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "mean_squared.hpp"
#include "multiplicative.hpp"

using namespace sharpineq;
using testutil::rel_err;

namespace {
double prod_pow(const std::vector<double>& lam) {
  double p = 1;
  for (double l : lam) p *= std::pow(l, l);
  return p;
}
}  // namespace

TEST_CASE("exponent validation") {
  CHECK_NOTHROW(check_exponents({0.5, 0.5}));
  CHECK_THROWS(check_exponents({0.5, 0.6}));
  CHECK_THROWS(check_exponents({1.0, 0.0}));
}

TEST_CASE("sharp factor arithmetic") {
  CHECK(std::fabs(sharp_factor(ExtendedSum::finite(0.5), {0.5, 0.5}).value() - 1) < 1e-15);
  CHECK(sharp_factor(ExtendedSum::finite(0), {0.5, 0.5}).value() == 0.0);
  std::vector<double> lam{0.2, 0.3, 0.5};
  CHECK(std::fabs(sharp_factor(ExtendedSum::finite(prod_pow(lam)), lam).value() - 1) < 1e-15);
  CHECK(sharp_factor(ExtendedSum::infinite(), lam).is_infinite());
}

TEST_CASE("class approximation error") {
  CHECK(std::fabs(class_approx_error(1, {0.5, 0.5}, {1}) - 0.25) < 1e-15);
  CHECK(std::fabs(class_approx_error(1, {0.5, 0.25, 0.25}, {1, 1}) - 0.125) < 1e-15);
  CHECK(class_approx_error(1, {0.5, 0.5}, {1e12}) < 1e-12);
  CHECK_THROWS(class_approx_error(1, {0.5, 0.5}, {0}));
}

TEST_CASE("single index multiplicative constants") {
  auto one = testutil::single_index(1, {1, 1});
  auto t = mult_taikov_constant(one, {0.5, 0.5});
  CHECK(std::fabs(t.value.value() - 0.5) < 1e-9);
  auto h = mult_hlp_constant(one, {0.5, 0.5});
  CHECK(std::fabs(h.value.value() - 0.5) < 1e-9);
  auto zero = testutil::single_index(0, {1, 1});
  CHECK(mult_taikov_constant(zero, {0.5, 0.5}).value.value() == 0.0);
  CHECK(mult_hlp_constant(zero, {0.5, 0.5}).value.value() == 0.0);
}

TEST_CASE("continuous model with constant objective") {
  RdModel m{1, {0}, {{0}, {1}}};
  auto r = mult_taikov_constant(m, {0.5, 0.5});
  CHECK(rel_err(r.value.value(), 0.5) < 1e-8);
}

TEST_CASE("objective scale invariance") {
  auto tor = testutil::torus1(0, {0, 1, 2});
  std::vector<double> lam{0.3, 0.3, 0.4};
  std::vector<double> h{0.2, 1.5, 0.7};
  auto obj = [&](const std::vector<double>& hh) {
    double p = 1;
    for (std::size_t j = 0; j < hh.size(); ++j) p *= std::pow(hh[j], lam[j]);
    return p * taikov_constant(tor, WeightVector(hh)).value.value();
  };
  double base = obj(h);
  for (double t : {0.1, 7.0}) {
    auto s = h;
    for (double& x : s) x *= t;
    CHECK(rel_err(obj(s), base) < 1e-12);
  }
}

TEST_CASE("finiteness series check") {
  auto tor = testutil::torus1(0, {0, 1});
  auto f = finiteness_series_check(tor, {0.25, 0.75});
  REQUIRE(f.converged());
  CHECK(rel_err(f.value.value(), testutil::kTwoZeta32) < 1e-8);
  CHECK(finiteness_series_check(tor, {0.5, 0.5}).value.is_infinite());
  auto zero = testutil::single_index(0, {1, 1});
  CHECK(finiteness_series_check(zero, {0.5, 0.5}).value.value() == 0.0);
}

TEST_CASE("hlp equality on gpower eigen-elements") {
  GPowerSpec g;
  g.k = {1};
  g.r_list = {{0}, {1}, {3}};
  auto m = build_gpower(g);
  std::vector<double> lam{0.5, 0.25, 0.25};
  for (std::int64_t n = 1; n <= 200; ++n) CHECK(std::fabs(equality_ratio(m, lam, Index(n)) - 1) < 1e-12);
  auto r = mult_hlp_constant(m, lam);
  CHECK(r.value.value() <= prod_pow(lam) * (1 + 1e-9));
  CHECK(std::fabs(sharp_factor(r.value, lam).value() - 1) < 1e-6);
}

TEST_CASE("hlp bound under AM-GM for a table gpower model") {
  GPowerSpec g;
  g.g = GKind::Table;
  g.table = {0.5, 1.3, 2, 2.2, 4, 9};
  g.k = {1};
  g.r_list = {{0}, {2}};
  auto m = build_gpower(g);
  std::vector<double> lam{0.5, 0.5};
  auto r = mult_hlp_constant(m, lam);
  CHECK(r.value.value() <= prod_pow(lam) * (1 + 1e-9));
}

TEST_CASE("optimizer beats the simplex grid") {
  auto tor = testutil::torus1(0, {0, 1, 2});
  auto r = mult_taikov_constant(tor, {0.4, 0.3, 0.3});
  CHECK(r.grid_checked);
  CHECK(r.certificate_gap <= 1e-6);
  CHECK(r.value.is_finite());
}

TEST_CASE("unbounded objective is infinite") {
  // Σ 1/(h₀ + h₁ n^{1/2}) diverges for every h.
  auto tor = testutil::torus1(0, {0, 0.25});
  auto r = mult_taikov_constant(tor, {0.5, 0.5});
  CHECK(r.value.is_infinite());
}
