#include "occkit/negative_occupancy.hpp"

#include <cmath>
#include <limits>

#include "occkit/detail/occupancy_recursion.hpp"
#include "occkit/errors.hpp"
#include "occkit/occupancy.hpp"
#include "occkit/reference.hpp"

namespace occkit {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// Runs the occupancy recursion over states 0..k-1 and hands each NegOcc(t)
// to `keep_going(t, mass, tail)`, where tail = P(T_k > t). Stops when it
// returns false.
template <typename F>
void scan_negocc(std::uint64_t m, std::uint64_t k, double theta, F&& keep_going) {
  detail::OccupancyRecursion<double> chain(m, theta, 0, k);
  chain.advance(k - 1);
  const double advance = theta * static_cast<double>(m - k + 1) / static_cast<double>(m);
  for (std::uint64_t t = 0;; ++t) {
    const double mass = advance * chain.probabilities()[k - 1];
    chain.step();
    double tail = 0.0;
    for (double x : chain.probabilities()) tail += x;
    if (!keep_going(t, mass, tail)) return;
  }
}

}  // namespace

Pmf negocc_pmf(const NegOccParams& p, std::uint64_t t_max) {
  if (p.m().is_infinite()) return negbin_pmf(p.k(), 1.0 - p.theta(), t_max);
  std::vector<double> probs;
  probs.reserve(t_max + 1);
  double tail = 0.0;
  scan_negocc(p.m().value(), p.k(), p.theta(), [&](std::uint64_t t, double mass, double rest) {
    probs.push_back(mass);
    tail = rest;
    return t < t_max;
  });
  const double bound = 4.0 * static_cast<double>(p.k() + t_max + 1) * eps;
  return Pmf(0, std::move(probs), PmfMeta{"recursion", bound, tail});
}

Pmf negocc_pmf_to_tail(const NegOccParams& p, double tail_tolerance, std::uint64_t t_cap) {
  if (!(tail_tolerance > 0.0)) throw DomainError("tail tolerance must be positive");
  if (p.m().is_infinite()) {
    std::uint64_t t_max = 64;
    while (true) {
      Pmf out = negbin_pmf(p.k(), 1.0 - p.theta(), t_max);
      if (out.meta().tail_mass <= tail_tolerance) return out;
      if (t_max >= t_cap) throw ResourceLimitError("negative occupancy tail did not reach tolerance within t_cap");
      t_max = std::min(t_cap, 2 * t_max);
    }
  }
  std::vector<double> probs;
  double tail = 0.0;
  bool capped = false;
  scan_negocc(p.m().value(), p.k(), p.theta(), [&](std::uint64_t t, double mass, double rest) {
    probs.push_back(mass);
    tail = rest;
    if (rest <= tail_tolerance) return false;
    if (t >= t_cap) {
      capped = true;
      return false;
    }
    return true;
  });
  if (capped) throw ResourceLimitError("negative occupancy tail did not reach tolerance within t_cap");
  const double bound = 4.0 * static_cast<double>(p.k() + probs.size()) * eps;
  return Pmf(0, std::move(probs), PmfMeta{"recursion", bound, tail});
}

double negocc_cdf(const NegOccParams& p, std::uint64_t t) {
  const std::uint64_t balls = p.k() + t;
  const Pmf occ = occ_pmf(OccParams(balls, p.m(), p.theta()));
  double sum = 0.0;
  for (std::int64_t j = static_cast<std::int64_t>(p.k()); j <= occ.support_max(); ++j) sum += occ(j);
  return sum;
}

ExactPmf negocc_pmf_exact(std::uint64_t m, std::uint64_t k, const ExactReal& theta, std::uint64_t t_max) {
  NegOccParams(m, k, 1.0);  // validates m and k
  const ExactReal advance = theta * ExactReal::from_uint(m - k + 1) / ExactReal::from_uint(m);
  ExactPmf out;
  out.probabilities.reserve(t_max + 1);
  for (std::uint64_t t = 0; t <= t_max; ++t) {
    const ExactPmf occ = occ_pmf_exact(k + t - 1, m, theta);
    out.probabilities.push_back(advance * occ(static_cast<std::int64_t>(k - 1)));
  }
  return out;
}

Pmf coupon_collector_pmf(BinCount m, double theta, std::uint64_t t_max) {
  if (m.is_infinite()) throw DomainError("coupon collector distribution needs a finite m");
  return negocc_pmf(NegOccParams(m, m.value(), theta), t_max);
}

Pmf coupon_collector_total_pmf(BinCount m, double theta, std::uint64_t t_max) {
  return coupon_collector_pmf(m, theta, t_max).shifted(static_cast<std::int64_t>(m.value()));
}

}  // namespace occkit
