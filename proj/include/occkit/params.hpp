#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace occkit {

/// Number of bins, possibly infinite (the binomial / negative binomial limit).
class BinCount {
 public:
  constexpr BinCount(std::uint64_t m) : value_(m) {}  // NOLINT(google-explicit-constructor)
  static constexpr BinCount infinite() { return BinCount(std::numeric_limits<std::uint64_t>::max()); }

  /// Accepts a positive integer or "inf".
  static BinCount parse(std::string_view text);

  constexpr bool is_infinite() const { return value_ == std::numeric_limits<std::uint64_t>::max(); }
  /// Finite bin count; throws DomainError when infinite.
  std::uint64_t value() const;
  std::string str() const;

  friend constexpr bool operator==(BinCount a, BinCount b) { return a.value_ == b.value_; }

 private:
  std::uint64_t value_;
};

/// Validated (n, m, theta) with m >= 1 (or infinite) and 0 < theta <= 1.
class OccParams {
 public:
  OccParams(std::uint64_t n, BinCount m, double theta);

  /// theta = 0: every ball falls through, so K_n = 0 surely.
  static OccParams degenerate(std::uint64_t n, BinCount m);

  std::uint64_t n() const { return n_; }
  BinCount m() const { return m_; }
  double theta() const { return theta_; }
  bool is_degenerate() const { return theta_ == 0.0; }
  /// min(n, m), the largest attainable occupancy.
  std::uint64_t k_max() const;

 private:
  OccParams(std::uint64_t n, BinCount m) : n_(n), m_(m), theta_(0.0) {}

  std::uint64_t n_;
  BinCount m_;
  double theta_;
};

/// Validated (m, k, theta) with 1 <= k <= m and 0 < theta <= 1.
class NegOccParams {
 public:
  NegOccParams(BinCount m, std::uint64_t k, double theta);

  BinCount m() const { return m_; }
  std::uint64_t k() const { return k_; }
  double theta() const { return theta_; }

 private:
  BinCount m_;
  std::uint64_t k_;
  double theta_;
};

/// Validated (n, k, phi) with k <= n and phi in [0, +inf].
class SpillageParams {
 public:
  SpillageParams(std::uint64_t n, std::uint64_t k, double phi);

  std::uint64_t n() const { return n_; }
  std::uint64_t k() const { return k_; }
  double phi() const { return phi_; }

 private:
  std::uint64_t n_;
  std::uint64_t k_;
  double phi_;
};

/// phi = m (1 - theta) / theta, +inf for infinite m with theta < 1.
double spillage_scale(BinCount m, double theta);

}  // namespace occkit
