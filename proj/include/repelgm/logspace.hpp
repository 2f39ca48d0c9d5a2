#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace repelgm {

/// Log-weight of a configuration the model forbids (hard-core conflicts).
/// It is -infinity, never NaN, so ordinary comparisons and exp() behave.
inline constexpr double kForbidden = -std::numeric_limits<double>::infinity();

inline bool is_forbidden(double log_weight) noexcept {
  return log_weight == kForbidden;
}

/// log(exp(a) + exp(b)) without overflow; kForbidden is the identity.
inline double log_add(double a, double b) noexcept {
  if (a < b) std::swap(a, b);
  if (is_forbidden(b)) return a;
  return a + std::log1p(std::exp(b - a));
}

/// Two-pass stable logsumexp.
inline double logsumexp(std::span<const double> xs) noexcept {
  double mx = kForbidden;
  for (double x : xs) mx = std::max(mx, x);
  if (is_forbidden(mx)) return kForbidden;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - mx);
  return mx + std::log(acc);
}

/// Running logsumexp accumulator for streaming sums over masked subsets.
class LogSumExp {
public:
  void add(double x) noexcept {
    if (is_forbidden(x)) return;
    if (x > max_) {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    } else {
      sum_ += std::exp(x - max_);
    }
  }

  double value() const noexcept {
    return is_forbidden(max_) ? kForbidden : max_ + std::log(sum_);
  }

private:
  double max_ = kForbidden;
  double sum_ = 0.0;
};

} // namespace repelgm
