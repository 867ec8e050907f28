#include "solyar.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "parallel.hpp"
#include "spectral_core.hpp"

namespace sharpineq {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TrigPolynomial::TrigPolynomial(int degree) : degree_(degree), a_(2 * std::max(degree, 0) + 1, 0.0) {
  if (degree < 0) throw InvalidArgument("degree must be >= 0");
}

TrigPolynomial TrigPolynomial::harmonic(int n, std::complex<double> a) {
  if (n == 0) throw InvalidArgument("the constant mode is excluded (zero mean)");
  TrigPolynomial x(n < 0 ? -n : n);
  x.set(n, a);
  return x;
}

TrigPolynomial TrigPolynomial::cosine(int n) {
  TrigPolynomial x(n < 0 ? -n : n);
  x.set(n, 0.5);
  x.set(-n, 0.5);
  return x;
}

std::complex<double> TrigPolynomial::coef(int n) const {
  if (n < -degree_ || n > degree_) return 0.0;
  return a_[n + degree_];
}

void TrigPolynomial::set(int n, std::complex<double> a) {
  if (n == 0 && a != 0.0) throw InvalidArgument("the constant mode is excluded (zero mean)");
  if (n < -degree_ || n > degree_) throw InvalidArgument("mode outside the degree bound");
  a_[n + degree_] = a;
}

std::complex<double> TrigPolynomial::operator()(double t) const {
  // Real arithmetic keeps this free of the checked complex multiply.
  const double c1 = std::cos(t), s1 = std::sin(t);
  double c = 1.0, s = 0.0, re = 0.0, im = 0.0;
  for (int n = 1; n <= degree_; ++n) {
    const double cn = c * c1 - s * s1;
    s = s * c1 + c * s1;
    c = cn;
    const auto& ap = a_[degree_ + n];
    const auto& am = a_[degree_ - n];
    re += (ap.real() + am.real()) * c - (ap.imag() - am.imag()) * s;
    im += (ap.imag() + am.imag()) * c + (ap.real() - am.real()) * s;
  }
  return {re, im};
}

bool TrigPolynomial::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const std::complex<double>& z) { return z == 0.0; });
}

double TrigPolynomial::parseval_sq() const {
  CompensatedSum s;
  for (const auto& z : a_) s.add(std::norm(z));
  return kTwoPi * s.value();
}

TrigPolynomial fractional_laplacian(const TrigPolynomial& x, double s) {
  TrigPolynomial y(x.degree());
  for (int n = -x.degree(); n <= x.degree(); ++n) {
    if (n == 0) continue;
    const double w = s == 0.0 ? 1.0 : std::pow(static_cast<double>(n < 0 ? -n : n), 2.0 * s);
    y.set(n, x.coef(n) * w);
  }
  return y;
}

namespace {

// |x|^2 on the uniform grid of size M, from the autocorrelation of the coefficients.
void grid_modulus_sq(const TrigPolynomial& x, int M, std::vector<double>& out) {
  thread_local Eigen::FFT<double> fft;
  thread_local std::vector<std::complex<double>> half;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  const int D = x.degree();
  half.assign(M / 2 + 1, 0.0);
  for (int j = 0; j <= 2 * D; ++j) {
    std::complex<double> r = 0.0;
    for (int n = -D; n + j <= D; ++n) {
      const auto u = x.coef(n + j), v = x.coef(n);
      r += std::complex<double>(u.real() * v.real() + u.imag() * v.imag(), u.imag() * v.real() - u.real() * v.imag());
    }
    half[j] = r;
  }
  fft.inv(out, half, M);
  for (double& v : out) v = std::max(v, 0.0);
}

// Coefficients of x^e (degree e * deg x), indexed from -e * deg.
std::vector<std::complex<double>> power_coefficients(const TrigPolynomial& x, int e) {
  const int D = x.degree();
  std::vector<std::complex<double>> base(2 * D + 1), acc{1.0};
  for (int n = -D; n <= D; ++n) base[n + D] = x.coef(n);
  for (int i = 0; i < e; ++i) {
    std::vector<std::complex<double>> next(acc.size() + base.size() - 1, 0.0);
    for (std::size_t a = 0; a < acc.size(); ++a)
      for (std::size_t b = 0; b < base.size(); ++b) next[a + b] += acc[a] * base[b];
    acc.swap(next);
  }
  return acc;
}

double power_of_sq(double r2, double p) {
  if (p == 2.0) return r2;
  if (p == 4.0) return r2 * r2;
  if (p == 1.0) return std::sqrt(r2);
  return std::pow(r2, 0.5 * p);
}

bool even_integer(double p) { return p == std::floor(p) && std::fmod(p, 2.0) == 0.0; }

}  // namespace

NormDetail trapezoid_norm_detail(const TrigPolynomial& x, double p, int grid_log2) {
  if (!(p >= 1.0)) throw InvalidArgument("p must be in [1, inf]");
  if (grid_log2 < 4 || grid_log2 > 24) throw InvalidArgument("grid size out of range");
  const int Mc = 1 << grid_log2, M = 2 * Mc;
  if (4 * x.degree() >= Mc) throw InvalidArgument("degree too large for the quadrature grid");
  NormDetail out;
  std::vector<double> r2;
  grid_modulus_sq(x, M, r2);

  if (std::isinf(p)) {
    int arg = 0;
    double coarse = 0.0;
    for (int m = 0; m < M; ++m) {
      if (r2[m] > r2[arg]) arg = m;
      if (m % 2 == 0) coarse = std::max(coarse, r2[m]);
    }
    // Refine the largest local maxima by golden-section search on |x(t)|^2.
    std::vector<int> peaks;
    for (int m = 0; m < M; ++m)
      if (r2[m] >= r2[(m + M - 1) % M] && r2[m] >= r2[(m + 1) % M]) peaks.push_back(m);
    std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return r2[a] > r2[b]; });
    if (peaks.size() > 4) peaks.resize(4);
    double best = r2[arg];
    const double h = kTwoPi / M, phi = 0.5 * (std::sqrt(5.0) - 1.0);
    auto f = [&](double t) { return std::norm(x(t)); };
    for (int m : peaks) {
      double lo = h * m - h, hi = h * m + h;
      double t1 = hi - phi * (hi - lo), t2 = lo + phi * (hi - lo);
      double f1 = f(t1), f2 = f(t2);
      for (int i = 0; i < 80 && hi - lo > 1e-11; ++i) {
        if (f1 < f2) {
          lo = t1;
          t1 = t2; f1 = f2;
          t2 = lo + phi * (hi - lo); f2 = f(t2);
        } else {
          hi = t2;
          t2 = t1; f2 = f1;
          t1 = hi - phi * (hi - lo); f1 = f(t1);
        }
      }
      best = std::max({best, f1, f2});
    }
    out.coarse = std::sqrt(coarse);
    out.fine = std::sqrt(r2[arg]);
    out.value = std::sqrt(best);
    return out;
  }

  // Positive terms in blocks of 256; the blockwise totals go through a compensated sum.
  CompensatedSum sc, so;
  for (int b = 0; b < M; b += 256) {
    double se = 0.0, sd = 0.0;
    const int e = std::min(M, b + 256);
    if (p == 1.0) {
      for (int m = b; m < e; m += 2) {
        se += std::sqrt(r2[m]);
        sd += std::sqrt(r2[m + 1]);
      }
    } else {
      for (int m = b; m < e; m += 2) {
        se += power_of_sq(r2[m], p);
        sd += power_of_sq(r2[m + 1], p);
      }
    }
    sc.add(se);
    so.add(sd);
  }
  const double Tc = kTwoPi / Mc * sc.value(), Tf = kTwoPi / M * (sc.value() + so.value());
  double T = Tf;
  if (!even_integer(p)) {
    // Trapezoid error near zeros of x scales like M^{-(p+1)}.
    const double f = std::exp2(p + 1.0);
    T = std::max(0.0, (f * Tf - Tc) / (f - 1.0));
  }
  out.coarse = std::pow(Tc, 1.0 / p);
  out.fine = std::pow(Tf, 1.0 / p);
  out.value = std::pow(T, 1.0 / p);
  return out;
}

NormDetail lp_norm_detail(const TrigPolynomial& x, double p, int grid_log2) {
  if (!(p >= 1.0)) throw InvalidArgument("p must be in [1, inf]");
  if (grid_log2 < 4 || grid_log2 > 24) throw InvalidArgument("grid size out of range");
  // The trapezoid rule integrates a trigonometric polynomial of degree < M exactly.
  if (std::isfinite(p) && even_integer(p) && p <= 64.0 && p * x.degree() < (1 << grid_log2)) {
    CompensatedSum s;
    for (const auto& z : power_coefficients(x, static_cast<int>(p / 2.0))) s.add(std::norm(z));
    NormDetail out;
    out.exact = true;
    out.value = out.coarse = out.fine = std::pow(kTwoPi * s.value(), 1.0 / p);
    return out;
  }
  return trapezoid_norm_detail(x, p, grid_log2);
}

double lp_norm(const TrigPolynomial& x, double p, int grid_log2) {
  return lp_norm_detail(x, p, grid_log2).value;
}

double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw InvalidArgument("p must be in [1, inf]");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

bool solyar_hypothesis(double k, double p) {
  const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
  return k >= 0.5 * (0.5 - inv);
}

SolyarResult solyar_ratio(const TrigPolynomial& x, double k, double p) {
  if (x.is_zero()) throw InvalidArgument("the zero polynomial has no ratio");
  if (!(k >= 0.0) || !std::isfinite(k)) throw InvalidArgument("k must be a finite real >= 0");
  SolyarResult r;
  r.q = conjugate_exponent(p);
  r.hypothesis_ok = solyar_hypothesis(k, p);
  if (!r.hypothesis_ok) r.warnings.push_back("k is below (1/2)(1/2 - 1/p); the inequality is not asserted here");
  r.lhs = fractional_laplacian(x, k).parseval_sq();
  r.norm_p = lp_norm(x, p);
  r.norm_q = lp_norm(fractional_laplacian(x, 2.0 * k), r.q);
  r.ratio = r.lhs / (r.norm_p * r.norm_q);
  return r;
}

TrigPolynomial random_trig_polynomial(std::uint64_t seed, std::uint64_t trial, int max_mode) {
  if (max_mode < 1) throw InvalidArgument("max_mode must be >= 1");
  auto eng = trial_engine(seed, trial);
  std::vector<int> modes;
  for (int n = 1; n <= max_mode; ++n) {
    modes.push_back(n);
    modes.push_back(-n);
  }
  std::uniform_int_distribution<std::size_t> size_dist(1, modes.size());
  const std::size_t s = size_dist(eng);
  for (std::size_t i = 0; i < s; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, modes.size() - 1);
    std::swap(modes[i], modes[pick(eng)]);
  }
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  TrigPolynomial x(max_mode);
  for (std::size_t i = 0; i < s; ++i) {
    double re = gauss(eng);
    double im = gauss(eng);
    x.set(modes[i], {re, im});
  }
  return x;
}

SolyarScan solyar_random_scan(double p, double k, std::int64_t trials, std::uint64_t seed, int max_mode) {
  if (trials < 0) throw InvalidArgument("trial count must be >= 0");
  SolyarScan out;
  out.p = p;
  out.k = k;
  out.trials = trials;
  out.hypothesis_ok = solyar_hypothesis(k, p);
  conjugate_exponent(p);
  const unsigned chunks = thread_count();
  struct Best {
    double ratio = -1.0;
    std::int64_t trial = -1;
  };
  std::vector<Best> best(chunks);
  parallel_chunks(trials, chunks, [&](std::int64_t lo, std::int64_t hi, unsigned ci) {
    for (std::int64_t t = lo; t < hi; ++t) {
      TrigPolynomial x = random_trig_polynomial(seed, static_cast<std::uint64_t>(t), max_mode);
      const double r = solyar_ratio(x, k, p).ratio;
      if (r > best[ci].ratio) best[ci] = {r, t};
    }
  });
  const Best* top = nullptr;
  for (const Best& b : best)
    if (b.trial >= 0 && (!top || b.ratio > top->ratio)) top = &b;
  if (top) {
    out.max_ratio = top->ratio;
    out.witness_trial = top->trial;
    out.witness = random_trig_polynomial(seed, static_cast<std::uint64_t>(top->trial), max_mode);
  }
  return out;
}

}  // namespace sharpineq
