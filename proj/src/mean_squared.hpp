#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "spectral_core.hpp"

namespace sharpineq {

// Squared constants: K^2 = ~sum c / b_h and ~sup c / b_h.
SeriesResult taikov_constant(const SpectralModel& model, const WeightVector& h,
                             const TailPolicy& tol = {});
SeriesResult taikov_constant(const WeightCache& cache, const WeightVector& h,
                             const TailPolicy& tol = {});
SeriesResult hlp_constant(const SpectralModel& model, const WeightVector& h,
                          const TailPolicy& tol = {});
SeriesResult hlp_constant(const WeightCache& cache, const WeightVector& h,
                          const TailPolicy& tol = {});

struct AdditiveCoeffs {
  ExtendedSum coef_C;
  ExtendedSum coef_D;
  SeriesResult sum_C;
  SeriesResult sum_D;
};

AdditiveCoeffs additive_taikov(const SpectralModel& modelC, const SpectralModel& modelD,
                               const WeightVector& h1, const WeightVector& h2,
                               const TailPolicy& tol = {});

struct ExtremalElement {
  std::vector<Index> indices;
  std::vector<double> coef;
  std::int64_t N = 0;
};

ExtremalElement extremal_element(const SpectralModel& model, const WeightVector& h, std::int64_t N);

struct RatioResult {
  double value = 0.0;
  bool defined = false;
  std::string status;
};

// |<f, A x>|^2 / ||x||^2_{B,h} for the extremal element at truncation N.
RatioResult sharpness_ratio(const SpectralModel& model, const WeightVector& h, std::int64_t N);
RatioResult element_ratio(const SpectralModel& model, const WeightVector& h,
                          const ExtremalElement& x);

enum class ScanKind { Taikov, HLP };

struct ScanResult {
  double max_ratio = 0.0;
  std::int64_t trials = 0;
  std::int64_t witness_trial = -1;
  std::vector<Index> witness_support;
  std::vector<std::complex<double>> witness;
  std::int64_t truncation = 0;
};

ScanResult random_violation_scan(const SpectralModel& model, const WeightVector& h,
                                 std::int64_t trials, std::uint64_t seed,
                                 ScanKind kind = ScanKind::Taikov, std::int64_t N = 16);

}  // namespace sharpineq
