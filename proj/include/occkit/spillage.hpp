#pragma once

#include <cstdint>

#include "occkit/exact_real.hpp"
#include "occkit/params.hpp"
#include "occkit/pmf.hpp"

namespace occkit {

/// Spillage(r | n, k, phi) = C(n, k+r) phi^(n-k-r) S(k+r, k) / S(n, k, phi)
/// over r = 0..n-k, in scaled arithmetic. phi = 0 gives the point mass at
/// n - k, phi = +inf and (k = 0, phi > 0) give the point mass at 0.
Pmf spillage_pmf(const SpillageParams& p);

/// The same law through the scaled Stirling function:
///   C(n-k, r) S(k+r, k) / (C(k+r, k) phi^r Pi(n, k, phi)).
/// Finite positive phi; used as an independent route.
Pmf spillage_pmf_via_pi(const SpillageParams& p);

/// Exact rationals; phi = 0 and k = 0 follow the same conventions.
ExactPmf spillage_pmf_exact(std::uint64_t n, std::uint64_t k, const ExactReal& phi);

/// P(n_eff = s | K_n = k) over s = k..n: spillage with phi = m(1-theta)/theta,
/// shifted by k.
Pmf effective_balls_given_occupancy(std::uint64_t n, BinCount m, double theta, std::uint64_t k);

}  // namespace occkit
