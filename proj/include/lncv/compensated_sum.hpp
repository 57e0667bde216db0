#pragma once

#include <cmath>

namespace lncv {

/*!
  Kahan-Babuska (Neumaier) running sum.

  Unlike plain Kahan summation the correction stays valid when the addend is
  larger in magnitude than the running sum, which happens routinely for
  heavy-tailed lognormal samples.
*/
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;

  void add(double value) noexcept {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) noexcept {
    add(value);
    return *this;
  }

  /// Folds another partial sum in, carrying both of its components.
  void merge(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.compensation_);
  }

  double value() const noexcept { return sum_ + compensation_; }

  /// The unevaluated pair (high, low); high + low carries roughly twice the
  /// precision of value().
  double high() const noexcept { return sum_; }
  double low() const noexcept { return compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace lncv
