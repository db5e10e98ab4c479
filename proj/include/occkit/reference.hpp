#pragma once

#include <cstdint>

#include "occkit/exact_real.hpp"
#include "occkit/pmf.hpp"

namespace occkit {

/// Bin(k | n, p) over k = 0..n.
Pmf binomial_pmf(std::uint64_t n, double p);
ExactPmf binomial_pmf_exact(std::uint64_t n, const ExactReal& p);

/// NegBin(t | k, p) = C(k+t-1, t) p^t (1-p)^k over t = 0..t_max: failures,
/// each with probability p, before the k-th success. The remainder is
/// reported as tail_mass.
Pmf negbin_pmf(std::uint64_t k, double p, std::uint64_t t_max);
ExactPmf negbin_pmf_exact(std::uint64_t k, const ExactReal& p, std::uint64_t t_max);

/// Pois(r | lambda) for r = 0.. until the remaining mass is below tail.
Pmf poisson_pmf(double lambda, double tail);

}  // namespace occkit
