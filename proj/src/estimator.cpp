#include "lncv/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lncv/error.hpp"

namespace lncv {

namespace {

void require_nonempty(const SampleAccumulator& acc) {
  if (acc.n() == 0) {
    throw EmptySampleError("statistic requested from an empty sample");
  }
}

void require_at_least_two(const SampleAccumulator& acc, const char* what) {
  if (acc.n() < 2) {
    throw SampleTooSmallError(std::string(what) +
                              " needs n >= 2 observations, got " +
                              std::to_string(acc.n()));
  }
}

void check_prediction_args(std::uint64_t n, double k) {
  if (n < 2) {
    throw DomainError("prediction needs sample size n >= 2");
  }
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw DomainError("relative ratio k must be a finite real >= 0");
  }
}

// 1 + k + k^2/(2n), shared by the variance laws of K_n and k_hat.
double variance_shape(std::uint64_t n, double k) {
  return 1.0 + k + k * k / (2.0 * static_cast<double>(n));
}

}  // namespace

void SampleAccumulator::add(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("observation is not finite");
  }
  if (!(x > 0.0)) {
    throw DomainError("lognormal support is positive reals, got " +
                      std::to_string(x));
  }
  ++n_;
  sum_x_ += x;
  // 1/x as an exact-ish pair: the residual of the rounded reciprocal.
  const double inv = 1.0 / x;
  sum_inv_x_ += inv;
  sum_inv_x_ += std::fma(-inv, x, 1.0) / x;
  sum_x2_ += x * x;
}

void SampleAccumulator::add(std::span<const double> xs) {
  for (double x : xs) add(x);
}

SampleAccumulator accumulate(SampleAccumulator acc, double x) {
  acc.add(x);
  return acc;
}

SampleAccumulator merge(const SampleAccumulator& a,
                        const SampleAccumulator& b) {
  SampleAccumulator out = a;
  out.n_ += b.n_;
  out.sum_x_.merge(b.sum_x_);
  out.sum_inv_x_.merge(b.sum_inv_x_);
  out.sum_x2_.merge(b.sum_x2_);
  return out;
}

SampleAccumulator accumulate_all(std::span<const double> xs) {
  SampleAccumulator acc;
  acc.add(xs);
  return acc;
}

double arithmetic_mean(const SampleAccumulator& acc) {
  require_nonempty(acc);
  return acc.sum_x() / static_cast<double>(acc.n());
}

double harmonic_mean(const SampleAccumulator& acc) {
  require_nonempty(acc);
  return static_cast<double>(acc.n()) / acc.sum_inv_x();
}

double relative_ratio(const SampleAccumulator& acc) {
  require_nonempty(acc);
  const double n = static_cast<double>(acc.n());
  const double n2 = n * n;
  // (sum x)(sum 1/x) - n^2 in double-double: when K_n is small the product
  // sits within a factor 2 of n^2, so the leading subtraction is exact and
  // the result keeps its relative precision.
  const CompensatedSum& sx = acc.sum_x_;
  const CompensatedSum& si = acc.sum_inv_x_;
  const double head = sx.high() * si.high();
  const double head_err = std::fma(sx.high(), si.high(), -head);
  const double tail = sx.high() * si.low() + sx.low() * si.high() +
                      sx.low() * si.low();
  const double excess = (head - n2) + (head_err + tail);
  return std::max(excess / n2, 0.0);
}

double k_hat(const SampleAccumulator& acc) {
  require_at_least_two(acc, "k_hat");
  const double n = static_cast<double>(acc.n());
  return n / (n - 1.0) * relative_ratio(acc);
}

double g_hat(const SampleAccumulator& acc) {
  const double a = arithmetic_mean(acc);
  const double h = harmonic_mean(acc);
  return std::clamp(std::sqrt(a * h), h, a);
}

double cv2_conventional(const SampleAccumulator& acc) {
  require_at_least_two(acc, "cv2_conventional");
  const double n = static_cast<double>(acc.n());
  const double mean = acc.sum_x() / n;
  const double variance = (acc.sum_x2() - n * mean * mean) / (n - 1.0);
  return std::max(variance / (mean * mean), 0.0);
}

double expected_k_n(std::uint64_t n, double k) {
  check_prediction_args(n, k);
  const double nd = static_cast<double>(n);
  return (nd - 1.0) / nd * k;
}

double var_k_n(std::uint64_t n, double k) {
  check_prediction_args(n, k);
  const double nd = static_cast<double>(n);
  return 2.0 * (nd - 1.0) / (nd * nd) * k * k * variance_shape(n, k);
}

double sd_k_n(std::uint64_t n, double k) { return std::sqrt(var_k_n(n, k)); }

double var_k_hat(std::uint64_t n, double k) {
  check_prediction_args(n, k);
  const double nd = static_cast<double>(n);
  return 2.0 / (nd - 1.0) * k * k * variance_shape(n, k);
}

double sd_k_hat(std::uint64_t n, double k) {
  return std::sqrt(var_k_hat(n, k));
}

double large_sample_efficiency(double sigma2_y) {
  if (std::isnan(sigma2_y) || sigma2_y <= 0.0) {
    throw DomainError("large_sample_efficiency needs sigma2_y > 0");
  }
  if (sigma2_y < 1e-12) return 1.0;
  const double ratio = sigma2_y / std::expm1(sigma2_y);
  return ratio * ratio;
}

std::uint64_t measurement_cost(std::uint64_t n, MeasurementMode mode) {
  return mode == MeasurementMode::collective ? 2 : n;
}

EstimateReport make_report(const SampleAccumulator& acc) {
  require_at_least_two(acc, "estimate report");
  EstimateReport r;
  r.n = acc.n();
  r.a_n = arithmetic_mean(acc);
  r.h_n = harmonic_mean(acc);
  r.k_n = relative_ratio(acc);
  r.k_hat = k_hat(acc);
  r.g_hat = g_hat(acc);
  r.cv2_conventional = cv2_conventional(acc);
  r.predicted_sd_k_hat = sd_k_hat(r.n, r.k_hat);
  r.cost_collective = measurement_cost(r.n, MeasurementMode::collective);
  r.cost_conventional = measurement_cost(r.n, MeasurementMode::conventional);
  return r;
}

}  // namespace lncv
