#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "occkit/exact_real.hpp"

namespace occkit {

struct PmfMeta {
  std::string backend;
  /// Bound on the l1 error of the probabilities (0 for exact results).
  double error_bound = 0.0;
  /// Probability beyond the last stored point, for truncated infinite supports.
  double tail_mass = 0.0;
};

/// Probability vector over the contiguous integers
/// [support_min, support_min + size). Leading and trailing zeros are trimmed,
/// and the stored mass plus tail_mass equals 1 within 1e-9.
class Pmf {
 public:
  Pmf() = default;
  Pmf(std::int64_t support_min, std::vector<double> probabilities, PmfMeta meta = {});

  static Pmf point_mass(std::int64_t at, std::string backend);

  bool empty() const { return probabilities_.empty(); }
  std::size_t size() const { return probabilities_.size(); }
  std::int64_t support_min() const { return support_min_; }
  std::int64_t support_max() const { return support_min_ + static_cast<std::int64_t>(probabilities_.size()) - 1; }
  const std::vector<double>& probabilities() const { return probabilities_; }
  const PmfMeta& meta() const { return meta_; }

  /// P(X = k); zero outside the stored support.
  double operator()(std::int64_t k) const;
  /// P(X <= k) from the stored mass (excludes tail_mass).
  double cdf(std::int64_t k) const;
  double total() const;

  double mean() const;
  double variance() const;
  /// E[(X - mean)^r].
  double central_moment(int r) const;

  Pmf shifted(std::int64_t offset) const;

 private:
  std::int64_t support_min_ = 0;
  std::vector<double> probabilities_;
  PmfMeta meta_;
};

/// sum_k |p(k) - q(k)| / 2 over the union of supports.
double total_variation(const Pmf& p, const Pmf& q);
/// max_k |p(k) - q(k)|.
double sup_distance(const Pmf& p, const Pmf& q);

/// Exact counterpart used by oracle paths: probabilities[i] = P(X = support_min + i).
struct ExactPmf {
  std::int64_t support_min = 0;
  std::vector<ExactReal> probabilities;

  ExactReal operator()(std::int64_t k) const;
  ExactReal total() const;
  Pmf to_pmf(std::string backend = "exact") const;
};

}  // namespace occkit
