#pragma once

// Reference values computed without the library's summation or quadrature code.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <cstdint>

namespace oracle {

// Sum of f(n) for n >= 1 using an explicit head in long double and an
// Euler-Maclaurin tail from M with exact antiderivative F_tail(M) = ∫_M^∞ f.
template <class F, class Tail, class D1, class D3>
long double em_sum(F f, Tail integral_tail, D1 df, D3 d3f, std::int64_t M) {
  long double s = 0;
  for (std::int64_t n = M; n >= 1; --n) s += f(static_cast<long double>(n));
  long double m = static_cast<long double>(M);
  // Σ_{n>M} f(n) = ∫_M^∞ f - f(M)/2 - f'(M)/12 + f'''(M)/720 - ...
  return s + integral_tail(m) - f(m) / 2 - df(m) / 12 + d3f(m) / 720;
}

// 2 Σ_{n>=1} 1/(1+n^2).
inline double torus_taikov() {
  auto f = [](long double n) { return 2.0L / (1 + n * n); };
  auto tail = [](long double m) { return 2.0L * std::atan(1.0L / m); };
  auto df = [](long double n) { return -4.0L * n / ((1 + n * n) * (1 + n * n)); };
  auto d3 = [](long double n) { return -48.0L / (n * n * n * n); };
  return static_cast<double>(em_sum(f, tail, df, d3, 200000));
}

// Σ_{n>=1} n^{-s}, s > 1.
inline double zeta(double s_in) {
  long double s = s_in;
  auto f = [s](long double n) { return std::pow(n, -s); };
  auto tail = [s](long double m) { return std::pow(m, 1 - s) / (s - 1); };
  auto df = [s](long double n) { return -s * std::pow(n, -s - 1); };
  auto d3 = [s](long double n) { return -s * (s + 1) * (s + 2) * std::pow(n, -s - 3); };
  return static_cast<double>(em_sum(f, tail, df, d3, 200000));
}

// ∫_0^∞ t^{2k} / (1 + t^{2r}) dt by double-exponential quadrature.
inline double power_integral(double k, double r) {
  boost::math::quadrature::exp_sinh<double> q;
  auto f = [k, r](double t) {
    if (t == 0) return k == 0 ? 1.0 : 0.0;
    double lt = std::log(t);
    return std::exp(2 * k * lt - std::log1p(std::exp(2 * r * lt)));
  };
  return q.integrate(f, 1e-15);
}

inline std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Dimension of degree-j spherical harmonics on S^b.
inline std::int64_t sphere_multiplicity(int b, std::int64_t j) {
  return binom(j + b, b) - binom(j + b - 2, b);
}

}  // namespace oracle
