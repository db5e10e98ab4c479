#pragma once

#include <cstdint>
#include <vector>

#include "occkit/exact_real.hpp"
#include "occkit/params.hpp"
#include "occkit/pmf.hpp"

namespace occkit {

/// Occ(k | n, m, theta) over k = 0..min(n, m), by the forward recursion in n.
/// Infinite m gives Bin(k | n, theta); the degenerate theta = 0 bundle gives
/// the point mass at 0.
Pmf occ_pmf(const OccParams& p);

/// theta^n / m^n (m)_k S(n, k, m(1-theta)/theta) with scaled Stirling values.
/// Independent of the recursion; finite m only.
Pmf occ_pmf_stirling(const OccParams& p);

/// Closed form in exact rationals. Finite m, 0 < theta <= 1.
ExactPmf occ_pmf_exact(std::uint64_t n, std::uint64_t m, const ExactReal& theta);
/// The forward recursion run in exact rationals.
ExactPmf occ_pmf_exact_by_recursion(std::uint64_t n, std::uint64_t m, const ExactReal& theta);

/// Law of K after n_new further balls given K = t:
/// Occ(k - t | n_new, m - t, theta (1 - t/m)), over k = t..m.
Pmf occ_conditional_pmf(std::uint64_t n_new, std::uint64_t m, double theta, std::uint64_t t);

double occ_cdf(const OccParams& p, std::int64_t k);

/// E((m - K_n)_r) = (m)_r (1 - theta r / m)^n. Finite m only.
double occ_factorial_moment(const OccParams& p, std::uint64_t r);
ExactReal occ_factorial_moment_exact(std::uint64_t n, std::uint64_t m, const ExactReal& theta, std::uint64_t r);

struct MomentSet {
  double mean = 0.0;
  double variance = 0.0;
  /// NaN when the variance is zero.
  double skewness = 0.0;
  /// Non-excess kurtosis; NaN when the variance is zero.
  double kurtosis = 0.0;
  /// E_1..E_4 with E_r = (1 - theta r / m)^n, or their asymptotic stand-ins.
  std::vector<double> e_terms;
};

/// Closed-form moments from E_1..E_4. Each E_r enters multiplied by
/// (m-1)...(m-r+1), so terms that cannot occur for small m vanish exactly
/// instead of cancelling in floating point. Infinite m gives binomial moments.
MomentSet occ_moments(const OccParams& p);

enum class MomentRegime { large_n, large_m };

/// large_n: E_r replaced by exp(-theta r n / m).
/// large_m: mean n theta, variance n theta (1 - theta) and the matching
/// binomial skewness and kurtosis.
MomentSet occ_moments_asymptotic(const OccParams& p, MomentRegime regime);

/// Continuity-corrected normal mass Phi((k + 1/2 - mu)/sigma) - Phi((k - 1/2 - mu)/sigma)
/// with mu, sigma from occ_moments. Throws DomainError when the variance is 0.
double occ_normal_approx(const OccParams& p, std::int64_t k);

}  // namespace occkit
