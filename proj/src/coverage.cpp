#include "occkit/coverage.hpp"

#include <cmath>

#include "occkit/chain.hpp"
#include "occkit/detail/occupancy_recursion.hpp"
#include "occkit/errors.hpp"
#include "occkit/negative_occupancy.hpp"
#include "occkit/occupancy.hpp"

namespace occkit {

namespace {

constexpr std::uint64_t exact_plan_limit = 30;

void check_sizes(std::uint64_t m) {
  if (m == 0) throw DomainError("original sample size m must be >= 1");
}

// Counts c[j] = (m)_j S(n, j) of draw sequences covering exactly j points,
// for j < k only; lower counts never depend on higher ones.
class CoverageCounts {
 public:
  CoverageCounts(std::uint64_t m, std::uint64_t k) : m_(m), c_(k, mpz_class(0)), total_(1) { c_[0] = 1; }

  void step() {
    for (std::size_t j = c_.size() - 1; j >= 1; --j) c_[j] = c_[j] * j + c_[j - 1] * (m_ - j + 1);
    c_[0] = 0;
    total_ *= m_;
  }

  // Sequences covering fewer than k points, out of m^n.
  mpq_class below() const {
    mpz_class sum = 0;
    for (const auto& x : c_) sum += x;
    return mpq_class(sum, total_);
  }

 private:
  std::uint64_t m_;
  std::vector<mpz_class> c_;
  mpz_class total_;
};

}  // namespace

Pmf coverage_pmf(std::uint64_t n, std::uint64_t m) {
  check_sizes(m);
  return occ_pmf(OccParams(n, m, 1.0));
}

Pmf coverage_conditional_pmf(std::uint64_t n, std::uint64_t m, std::uint64_t r) {
  check_sizes(m);
  return occ_conditional_pmf(n, m, 1.0, r);
}

CoveragePlan required_resample_size(std::uint64_t m, std::uint64_t k, double phi_target, std::uint64_t n_limit) {
  check_sizes(m);
  if (k == 0 || k > m) throw DomainError("required coverage k must lie in 1..m");
  if (!(phi_target > 0.0 && phi_target < 1.0)) throw DomainError("target probability must lie in (0, 1)");
  CoveragePlan plan{m, k, phi_target, 0, 0.0, 0.0, ""};
  if (m <= exact_plan_limit) {
    plan.backend = "exact";
    const mpq_class allowed = 1 - ExactReal::from_double(phi_target).raw();
    CoverageCounts counts(m, k);
    mpq_class previous_below = 1;
    for (std::uint64_t n = 1; n <= n_limit; ++n) {
      counts.step();
      const mpq_class below = counts.below();
      if (below <= allowed) {
        plan.n_required = n;
        plan.achieved_probability = ExactReal(mpq_class(1 - below)).to_double();
        plan.previous_probability = ExactReal(mpq_class(1 - previous_below)).to_double();
        return plan;
      }
      previous_below = below;
    }
    throw ResourceLimitError("required resample size exceeds n_limit");
  }
  plan.backend = "recursion";
  const double allowed = 1.0 - phi_target;
  detail::OccupancyRecursion<double> chain(m, 1.0, 0, k);
  double previous_below = 1.0;
  for (std::uint64_t n = 1; n <= n_limit; ++n) {
    chain.step();
    double below = 0.0;
    for (double x : chain.probabilities()) below += x;
    if (below <= allowed) {
      plan.n_required = n;
      plan.achieved_probability = 1.0 - below;
      plan.previous_probability = 1.0 - previous_below;
      return plan;
    }
    previous_below = below;
  }
  throw ResourceLimitError("required resample size exceeds n_limit");
}

CoverageMoments coverage_moments(std::uint64_t n, std::uint64_t m) {
  check_sizes(m);
  const auto mm = static_cast<long double>(m);
  const auto nn = static_cast<long double>(n);
  const long double e1 = std::pow(1.0L - 1.0L / mm, nn);
  const long double e2 = std::pow(1.0L - 2.0L / mm, nn);
  CoverageMoments out;
  out.mean_proportion = static_cast<double>(1.0L - e1);
  out.variance_proportion = static_cast<double>(std::max(0.0L, ((mm - 1.0L) * e2 + e1 - mm * e1 * e1) / mm));
  out.lambda = static_cast<double>(nn / mm);
  const double tail = std::exp(-out.lambda);
  out.asymptotic_mean = 1.0 - tail;
  out.asymptotic_variance = tail * (1.0 - tail) / static_cast<double>(m);
  return out;
}

ExactReal coverage_mean_exact(std::uint64_t n, std::uint64_t m) {
  check_sizes(m);
  return ExactReal(1) - ExactReal(static_cast<std::int64_t>(m - 1), static_cast<std::int64_t>(m)).pow(n);
}

ExactReal coverage_variance_exact(std::uint64_t n, std::uint64_t m) {
  check_sizes(m);
  const ExactReal bins = ExactReal::from_uint(m);
  const ExactReal e1 = (ExactReal(1) - ExactReal(1) / bins).pow(n);
  const ExactReal e2 = (ExactReal(1) - ExactReal(2) / bins).pow(n);
  return ((bins - ExactReal(1)) * e2 + e1 - bins * e1 * e1) / bins;
}

CoverageSimulation simulate_coverage(std::uint64_t n, std::uint64_t m, std::uint64_t replications, StreamSeed seed) {
  check_sizes(m);
  CoverageSimulation out;
  out.n = n;
  out.m = m;
  out.replications = replications;
  if (replications == 0) return out;
  out.occupancy.reserve(replications);
  std::vector<std::uint64_t> counts(std::min(n, m) + 1, 0);
  double total = 0.0;
  for (std::uint64_t s = 0; s < replications; ++s) {
    const std::uint64_t k = simulate_occupancy(n, m, 1.0, seed.split(s));
    out.occupancy.push_back(k);
    ++counts[k];
    total += static_cast<double>(k);
  }
  std::vector<double> freq(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    freq[k] = static_cast<double>(counts[k]) / static_cast<double>(replications);
  }
  out.empirical = Pmf(0, std::move(freq), PmfMeta{"simulation", 0.0, 0.0});
  out.sup_distance = sup_distance(out.empirical, coverage_pmf(n, m));
  out.mean_proportion = total / static_cast<double>(replications) / static_cast<double>(m);
  return out;
}

Pmf excess_resamples_pmf(std::uint64_t m, std::uint64_t k, std::uint64_t t_max) {
  check_sizes(m);
  return negocc_pmf(NegOccParams(m, k, 1.0), t_max);
}

Pmf excess_resamples_conditional_pmf(std::uint64_t m, std::uint64_t covered, std::uint64_t r, std::uint64_t k_more,
                                     std::uint64_t t_max) {
  check_sizes(m);
  if (covered >= m) throw DomainError("covered points must be fewer than m");
  if (k_more == 0 || covered + k_more > m) throw DomainError("additional coverage must lie in 1..m - covered");
  const double theta = static_cast<double>(m - covered) / static_cast<double>(m);
  return negocc_pmf(NegOccParams(m - covered, k_more, theta), t_max).shifted(static_cast<std::int64_t>(r));
}

}  // namespace occkit
