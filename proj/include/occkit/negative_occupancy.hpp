#pragma once

#include <cstdint>

#include "occkit/exact_real.hpp"
#include "occkit/params.hpp"
#include "occkit/pmf.hpp"

namespace occkit {

/// Excess hitting time T_k: NegOcc(t | m, k, theta) =
/// theta (m-k+1)/m Occ(k-1 | k+t-1, m, theta), for t = 0..t_max, from one
/// running occupancy recursion. meta().tail_mass is P(T_k > t_max), taken as
/// P(K_{k+t_max} < k). Infinite m gives NegBin(t | k, 1 - theta).
Pmf negocc_pmf(const NegOccParams& p, std::uint64_t t_max);

/// As negocc_pmf, extending t until the tail mass is at most tail_tolerance.
/// Throws ResourceLimitError if that needs more than t_cap terms.
Pmf negocc_pmf_to_tail(const NegOccParams& p, double tail_tolerance, std::uint64_t t_cap = 100'000'000);

/// P(T_k <= t) = sum_{r=0}^{m-k} Occ(k+r | k+t, m, theta).
double negocc_cdf(const NegOccParams& p, std::uint64_t t);

/// Exact rationals via the Stirling closed form of Occ. Finite m.
ExactPmf negocc_pmf_exact(std::uint64_t m, std::uint64_t k, const ExactReal& theta, std::uint64_t t_max);

/// Coupon collector: NegOcc with k = m. Finite m only.
Pmf coupon_collector_pmf(BinCount m, double theta, std::uint64_t t_max);
/// Same law on the total number of balls m + t.
Pmf coupon_collector_total_pmf(BinCount m, double theta, std::uint64_t t_max);

}  // namespace occkit
