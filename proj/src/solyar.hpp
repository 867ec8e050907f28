#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace sharpineq {

// Zero-mean trigonometric polynomial sum_{0 < |n| <= degree} a_n e^{int}.
class TrigPolynomial {
 public:
  explicit TrigPolynomial(int degree = 0);
  static TrigPolynomial harmonic(int n, std::complex<double> a = 1.0);
  static TrigPolynomial cosine(int n);

  int degree() const { return degree_; }
  std::complex<double> coef(int n) const;
  void set(int n, std::complex<double> a);
  std::complex<double> operator()(double t) const;
  bool is_zero() const;
  // 2π · sum |a_n|^2 = ||x||_2^2.
  double parseval_sq() const;

 private:
  int degree_;
  std::vector<std::complex<double>> a_;
};

TrigPolynomial fractional_laplacian(const TrigPolynomial& x, double s);

struct NormDetail {
  double value = 0.0;
  double coarse = 0.0;  // trapezoid value on the nominal grid
  double fine = 0.0;    // same on the doubled grid
  bool exact = false;   // even p: |x|^p = |x^{p/2}|^2 summed in closed form
};

constexpr int kSolyarGridLog2 = 14;

// L^p norm on [0, 2π) for p in [1, inf]; p = inf is passed as INFINITY.
NormDetail lp_norm_detail(const TrigPolynomial& x, double p, int grid_log2 = kSolyarGridLog2);
// Grid-only evaluation (no closed form for even p).
NormDetail trapezoid_norm_detail(const TrigPolynomial& x, double p, int grid_log2 = kSolyarGridLog2);
double lp_norm(const TrigPolynomial& x, double p, int grid_log2 = kSolyarGridLog2);

double conjugate_exponent(double p);
bool solyar_hypothesis(double k, double p);

struct SolyarResult {
  double ratio = 0.0;
  double lhs = 0.0;
  double norm_p = 0.0;
  double norm_q = 0.0;
  double q = 0.0;
  bool hypothesis_ok = true;
  std::vector<std::string> warnings;
};

// ||Δ^k x||_2^2 / (||x||_p ||Δ^{2k} x||_q).
SolyarResult solyar_ratio(const TrigPolynomial& x, double k, double p);

struct SolyarScan {
  double max_ratio = 0.0;
  std::int64_t trials = 0;
  std::int64_t witness_trial = -1;
  TrigPolynomial witness;
  double p = 2.0, k = 1.0;
  bool hypothesis_ok = true;
};

TrigPolynomial random_trig_polynomial(std::uint64_t seed, std::uint64_t trial, int max_mode);
SolyarScan solyar_random_scan(double p, double k, std::int64_t trials, std::uint64_t seed,
                              int max_mode = 10);

}  // namespace sharpineq
