#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "lncv/compensated_sum.hpp"

namespace lncv {

/*!
  Streaming sums over a positive sample: count, sum of x, sum of 1/x and sum
  of x^2. Every estimator in this header is a read-out of these four numbers,
  so an accumulator can be filled incrementally, or filled in pieces on
  separate threads and combined with merge().
*/
class SampleAccumulator {
 public:
  SampleAccumulator() = default;

  /// Adds one observation. Throws DomainError for x <= 0 or non-finite x.
  void add(double x);

  /// Adds every element of `xs`, in order.
  void add(std::span<const double> xs);

  std::uint64_t n() const noexcept { return n_; }
  double sum_x() const noexcept { return sum_x_.value(); }
  double sum_inv_x() const noexcept { return sum_inv_x_.value(); }
  double sum_x2() const noexcept { return sum_x2_.value(); }

  friend SampleAccumulator merge(const SampleAccumulator& a,
                                 const SampleAccumulator& b);
  friend double relative_ratio(const SampleAccumulator& acc);

 private:
  std::uint64_t n_ = 0;
  CompensatedSum sum_x_;
  CompensatedSum sum_inv_x_;
  CompensatedSum sum_x2_;
};

/// Value-returning form of SampleAccumulator::add.
SampleAccumulator accumulate(SampleAccumulator acc, double x);

/// Component-wise sum of two accumulators.
SampleAccumulator merge(const SampleAccumulator& a, const SampleAccumulator& b);

/// Accumulator over a whole sample.
SampleAccumulator accumulate_all(std::span<const double> xs);

// Sample read-outs. Means, relative_ratio and g_hat need n >= 1
// (EmptySampleError); k_hat and cv2_conventional need n >= 2
// (SampleTooSmallError).

double arithmetic_mean(const SampleAccumulator& acc);
double harmonic_mean(const SampleAccumulator& acc);

/// K_n = A_n / H_n - 1, clamped at 0 against rounding on constant samples.
double relative_ratio(const SampleAccumulator& acc);

/// Bias-corrected n/(n-1) * K_n; unbiased for C_v^2 under the lognormal.
double k_hat(const SampleAccumulator& acc);

/// sqrt(A_n * H_n), kept inside [H_n, A_n].
double g_hat(const SampleAccumulator& acc);

/// Unbiased sample variance over squared sample mean, clamped at 0.
double cv2_conventional(const SampleAccumulator& acc);

// Population predictions for a sample of size n >= 2 drawn from a lognormal
// with relative ratio k >= 0. Invalid arguments throw DomainError.

double expected_k_n(std::uint64_t n, double k);
double var_k_n(std::uint64_t n, double k);
double sd_k_n(std::uint64_t n, double k);
double var_k_hat(std::uint64_t n, double k);
double sd_k_hat(std::uint64_t n, double k);

/// Asymptotic variance of the UMVUE of C_v^2 over that of k_hat:
/// sigma2^2 / (exp(sigma2) - 1)^2. Returns exactly 1 below sigma2 = 1e-12.
double large_sample_efficiency(double sigma2_y);

enum class MeasurementMode { conventional, collective };

/// Physical reads needed for one estimate: n per-replicate reads, or one
/// collective A_n read plus one collective H_n read.
std::uint64_t measurement_cost(std::uint64_t n, MeasurementMode mode);

struct EstimateReport {
  std::uint64_t n = 0;
  double a_n = 0.0;
  double h_n = 0.0;
  double k_n = 0.0;
  double k_hat = 0.0;
  double g_hat = 0.0;
  double cv2_conventional = 0.0;
  /// Plug-in diagnostic: sd_k_hat(n, k_hat). Not an unbiased estimate.
  double predicted_sd_k_hat = 0.0;
  std::uint64_t cost_collective = 2;
  std::uint64_t cost_conventional = 0;
};

/// Every estimate at once. Requires n >= 2.
EstimateReport make_report(const SampleAccumulator& acc);

}  // namespace lncv
