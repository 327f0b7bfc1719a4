#pragma once

#include <cmath>
#include <cstdint>

namespace tbell {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// First and second sample moments of a scalar observable.
class SampleMoments {
 public:
  void add(double x) noexcept {
    sum_.add(x);
    sum_sq_.add(x * x);
    ++count_;
  }
  void merge(const SampleMoments& other) noexcept {
    sum_.add(other.sum_.value());
    sum_sq_.add(other.sum_sq_.value());
    count_ += other.count_;
  }
  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept {
    return count_ == 0 ? 0.0 : sum_.value() / static_cast<double>(count_);
  }
  /// Unbiased sample variance; zero for fewer than two samples.
  double variance() const noexcept {
    if (count_ < 2) return 0.0;
    const double n = static_cast<double>(count_);
    const double m = sum_.value() / n;
    const double v = (sum_sq_.value() - n * m * m) / (n - 1.0);
    return v > 0.0 ? v : 0.0;
  }
  double std_error() const noexcept {
    return count_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
  }

 private:
  CompensatedSum sum_;
  CompensatedSum sum_sq_;
  std::uint64_t count_ = 0;
};

}  // namespace tbell
