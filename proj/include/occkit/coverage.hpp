#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "occkit/exact_real.hpp"
#include "occkit/pmf.hpp"
#include "occkit/rng.hpp"

namespace occkit {

/// Number of distinct original points in a with-replacement resample of size
/// n from m points: Occ(k | n, m).
Pmf coverage_pmf(std::uint64_t n, std::uint64_t m);

/// Coverage after n further draws given r points are already covered:
/// Occ(k - r | n, m - r, 1 - r/m).
Pmf coverage_conditional_pmf(std::uint64_t n, std::uint64_t m, std::uint64_t r);

struct CoveragePlan {
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  double phi_target = 0.0;
  std::uint64_t n_required = 0;
  /// P(K_n >= k) at n_required.
  double achieved_probability = 0.0;
  /// P(K_n >= k) at n_required - 1; below phi_target.
  double previous_probability = 0.0;
  /// "exact" when decided in integer arithmetic (m <= 30), else "recursion".
  std::string backend;
};

/// Smallest n with P(K_n >= k) >= phi_target, scanning n upward. For m <= 30
/// the comparison is made exactly on the counts (m)_j S(n, j); otherwise on
/// the float recursion through P(K_n < k) <= 1 - phi_target.
/// Throws ResourceLimitError past n_limit.
CoveragePlan required_resample_size(std::uint64_t m, std::uint64_t k, double phi_target,
                                    std::uint64_t n_limit = 100'000'000);

struct CoverageMoments {
  double mean_proportion = 0.0;
  double variance_proportion = 0.0;
  double asymptotic_mean = 0.0;
  double asymptotic_variance = 0.0;
  double lambda = 0.0;
};

/// E(K_n/m) = 1 - (1 - 1/m)^n and V(K_n/m) = [(m-1)E_2 + E_1 - m E_1^2] / m
/// with E_r = (1 - r/m)^n; asymptotic forms at lambda = n/m.
CoverageMoments coverage_moments(std::uint64_t n, std::uint64_t m);
ExactReal coverage_mean_exact(std::uint64_t n, std::uint64_t m);
ExactReal coverage_variance_exact(std::uint64_t n, std::uint64_t m);

struct CoverageSimulation {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t replications = 0;
  /// K for each replication, in order.
  std::vector<std::uint64_t> occupancy;
  /// Empirical law of K; empty when replications = 0.
  Pmf empirical;
  /// max_k |empirical(k) - Occ(k | n, m)|.
  double sup_distance = 0.0;
  double mean_proportion = 0.0;
};

/// Replication s uses stream seed.split(s).
CoverageSimulation simulate_coverage(std::uint64_t n, std::uint64_t m, std::uint64_t replications, StreamSeed seed);

/// Excess draws T_k needed to cover k distinct points: NegOcc(t | m, k).
Pmf excess_resamples_pmf(std::uint64_t m, std::uint64_t k, std::uint64_t t_max);

/// Law of the excess T_{covered + k_more} given T_covered = r: the excess so
/// far plus NegOcc( . | m - covered, k_more, 1 - covered/m), over
/// t = r..r + t_max.
Pmf excess_resamples_conditional_pmf(std::uint64_t m, std::uint64_t covered, std::uint64_t r, std::uint64_t k_more,
                                     std::uint64_t t_max);

}  // namespace occkit
