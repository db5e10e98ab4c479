#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <vector>

namespace occkit::detail {

/// Distribution of the occupancy number under the pure-birth chain, advanced
/// one ball at a time:
///   p'(s) = (1 - theta (m - s)/m) p(s) + theta (m - s + 1)/m p(s - 1).
/// Every coefficient lies in [0, 1], so the float recursion is stable.
/// Only states start .. start + max_states - 1 are tracked; lower states never
/// depend on higher ones, so truncating from above is exact.
///
/// In floating point, leading states whose mass falls below the smallest
/// normal number are set to zero and dropped from the sweep. Each such flush
/// loses under 2.3e-308 of mass; without it the sweep crawls through
/// subnormal arithmetic once n/m is large.
template <typename Number>
class OccupancyRecursion {
 public:
  OccupancyRecursion(std::uint64_t m, const Number& theta, std::uint64_t start, std::size_t max_states)
      : max_states_(std::max<std::size_t>(1, std::min<std::uint64_t>(max_states, m - start + 1))) {
    up_.reserve(max_states_);
    stay_.reserve(max_states_);
    const Number bins = from_u64(m);
    for (std::size_t j = 0; j < max_states_; ++j) {
      const Number up = theta * from_u64(m - start - j) / bins;
      up_.push_back(up);
      stay_.push_back(Number(1) - up);
    }
    p_.push_back(Number(1));
  }

  void step() {
    if (p_.size() < max_states_) p_.push_back(Number(0));
    for (std::size_t j = p_.size() - 1; j > low_; --j) p_[j] = stay_[j] * p_[j] + up_[j - 1] * p_[j - 1];
    p_[low_] = stay_[low_] * p_[low_];
    if constexpr (std::is_floating_point_v<Number>) {
      while (low_ + 1 < p_.size() && p_[low_] < std::numeric_limits<Number>::min()) p_[low_++] = Number(0);
    }
    ++balls_;
  }

  void advance(std::uint64_t count) {
    for (std::uint64_t i = 0; i < count; ++i) step();
  }

  /// probabilities()[j] = P(K = start + j) after balls() balls.
  const std::vector<Number>& probabilities() const { return p_; }
  std::uint64_t balls() const { return balls_; }

 private:
  static Number from_u64(std::uint64_t v) {
    if constexpr (std::is_floating_point_v<Number>) {
      return static_cast<Number>(v);
    } else {
      return Number::from_uint(v);
    }
  }

  std::size_t max_states_;
  std::vector<Number> up_;
  std::vector<Number> stay_;
  std::vector<Number> p_;
  std::size_t low_ = 0;
  std::uint64_t balls_ = 0;
};

}  // namespace occkit::detail
