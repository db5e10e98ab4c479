#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "occkit/chain.hpp"
#include "occkit/coverage.hpp"
#include "occkit/errors.hpp"
#include "occkit/negative_occupancy.hpp"
#include "occkit/occupancy.hpp"
#include "oracles.hpp"

using namespace occkit;

namespace {

double reach_probability(std::uint64_t n, std::uint64_t m, std::uint64_t k) {
  const Pmf pmf = occupancy_by_power(n, m, 1.0, 0);
  double sum = 0.0;
  for (std::uint64_t j = k; j <= m; ++j) sum += pmf(static_cast<std::int64_t>(j));
  return sum;
}

}  // namespace

TEST_CASE("coverage distribution") {
  const Pmf a = coverage_pmf(2, 2);
  CHECK(a(1) == 0.5);
  CHECK(a(2) == 0.5);
  for (std::uint64_t m : {1, 4, 30}) {
    const Pmf one = coverage_pmf(1, m);
    CHECK(one.size() == 1);
    CHECK(one(1) == 1.0);
  }
  const auto brute = oracle::occ_by_allocation(5, 4);
  const Pmf c = coverage_pmf(5, 4);
  for (int k = 0; k <= 4; ++k) CHECK(c(k) == doctest::Approx(brute[k].to_double()).epsilon(1e-14));
}

TEST_CASE("conditional coverage matches the chain") {
  for (std::uint64_t m = 1; m <= 7; ++m)
    for (std::uint64_t r = 0; r <= m; ++r)
      for (std::uint64_t n = 0; n <= 9; ++n)
        CHECK(sup_distance(coverage_conditional_pmf(n, m, r), occupancy_by_power(n, m, 1.0, r)) <= 1e-13);
}

TEST_CASE("required resample size examples") {
  const CoveragePlan a = required_resample_size(2, 2, 0.5);
  CHECK(a.n_required == 2);
  CHECK(a.achieved_probability == 0.5);
  const CoveragePlan b = required_resample_size(2, 2, 0.9);
  CHECK(b.n_required == 5);
  CHECK(b.achieved_probability == 0.9375);
  CHECK(b.previous_probability == 0.875);
  for (std::uint64_t m : {1, 5, 100})
    for (double phi : {0.01, 0.5, 0.99}) CHECK(required_resample_size(m, 1, phi).n_required == 1);
  CHECK_THROWS_AS(required_resample_size(3, 4, 0.5), DomainError);
  CHECK_THROWS_AS(required_resample_size(3, 0, 0.5), DomainError);
  CHECK_THROWS_AS(required_resample_size(3, 2, 0.0), DomainError);
  CHECK_THROWS_AS(required_resample_size(3, 2, 1.0), DomainError);
}

TEST_CASE("required resample size is minimal") {
  for (std::uint64_t m : {2, 3, 5, 8, 13, 30, 31, 45})
    for (std::uint64_t k = 1; k <= m; k += (m > 10 ? 4 : 1))
      for (double phi : {0.1, 0.5, 0.9, 0.999}) {
        const CoveragePlan p = required_resample_size(m, k, phi);
        INFO("m=" << m << " k=" << k << " phi=" << phi);
        CHECK(p.n_required >= k);
        CHECK(p.achieved_probability >= phi);
        CHECK(p.previous_probability < phi);
        CHECK(reach_probability(p.n_required, m, k) == doctest::Approx(p.achieved_probability).epsilon(1e-10));
        CHECK(reach_probability(p.n_required - 1, m, k) == doctest::Approx(p.previous_probability).epsilon(1e-10));
        CHECK(p.backend == (m <= 30 ? "exact" : "recursion"));
      }
}

TEST_CASE("exact planner decides ties exactly") {
  // P(K_n = 3 | m = 3) hits 2/9 at n = 3; asking for exactly that must stop there.
  const CoveragePlan p = required_resample_size(3, 3, 2.0 / 9.0);
  const ExactReal at3 = occ_pmf_exact(3, 3, ExactReal(1))(3);
  CHECK(at3 == ExactReal(2, 9));
  CHECK(p.n_required == (ExactReal::from_double(2.0 / 9.0) <= at3 ? 3U : 4U));
}

TEST_CASE("coverage moments") {
  const CoverageMoments a = coverage_moments(25, 25);
  const ExactReal mean = coverage_mean_exact(25, 25);
  CHECK(mean == ExactReal(1) - ExactReal(24, 25).pow(25));
  CHECK(a.mean_proportion == doctest::Approx(mean.to_double()).epsilon(1e-15));
  CHECK(a.asymptotic_mean == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(a.lambda == 1.0);
  CHECK(coverage_moments(0, 7).mean_proportion == 0.0);
  for (std::uint64_t n : {1, 2, 9}) CHECK(coverage_moments(n, 1).mean_proportion == 1.0);
  for (std::uint64_t m = 1; m <= 6; ++m)
    for (std::uint64_t n = 0; n <= 8; ++n) {
      const ExactPmf pmf = occ_pmf_exact(n, m, ExactReal(1));
      ExactReal e1(0), e2(0);
      for (std::size_t k = 0; k < pmf.probabilities.size(); ++k) {
        const ExactReal prop = ExactReal::from_uint(k) / ExactReal::from_uint(m);
        e1 += prop * pmf.probabilities[k];
        e2 += prop * prop * pmf.probabilities[k];
      }
      CHECK(coverage_mean_exact(n, m) == e1);
      CHECK(coverage_variance_exact(n, m) == e2 - e1 * e1);
      const CoverageMoments cm = coverage_moments(n, m);
      CHECK(cm.variance_proportion >= 0.0);
      CHECK(cm.variance_proportion == doctest::Approx((e2 - e1 * e1).to_double()).epsilon(1e-12));
    }
  const CoverageMoments big = coverage_moments(3000, 2000);
  CHECK(big.asymptotic_mean == doctest::Approx(1 - std::exp(-1.5)));
  CHECK(big.asymptotic_variance == doctest::Approx(std::exp(-1.5) * (1 - std::exp(-1.5)) / 2000));
}

TEST_CASE("simulated coverage") {
  const CoverageSimulation none = simulate_coverage(25, 25, 0, StreamSeed(1));
  CHECK(none.replications == 0);
  CHECK(none.occupancy.empty());
  CHECK(none.empirical.empty());

  const CoverageSimulation fig = simulate_coverage(25, 25, 30, StreamSeed(2));
  CHECK(fig.occupancy.size() == 30);
  for (auto k : fig.occupancy) CHECK((k >= 1 && k <= 25));

  const CoverageSimulation big = simulate_coverage(25, 25, 100000, StreamSeed(3));
  CHECK(std::fabs(big.mean_proportion - (1 - std::pow(0.96, 25))) < 0.005);
  CHECK(std::fabs(big.empirical.total() - 1.0) <= 1e-12);
}

TEST_CASE("empirical coverage law converges") {
  std::vector<double> sup;
  for (std::uint64_t s : {100, 1000, 10000, 100000}) {
    const auto sim = simulate_coverage(25, 25, s, StreamSeed(77));
    CHECK(sim.sup_distance <= 2.0 / std::sqrt(static_cast<double>(s)));
    sup.push_back(sim.sup_distance);
  }
  CHECK(sup.back() < sup.front());
  CHECK(sup[3] < sup[1]);
}

TEST_CASE("excess resamples") {
  const Pmf a = excess_resamples_pmf(2, 2, 40);
  for (int t = 0; t <= 40; ++t) CHECK(a(t) == doctest::Approx(std::ldexp(1.0, -(t + 1))));
  const Pmf b = excess_resamples_pmf(6, 1, 10);
  CHECK(b.size() == 1);
  CHECK(b(0) == 1.0);
}

TEST_CASE("coverage and excess resamples are dual") {
  double worst = 0.0;
  for (std::uint64_t m = 1; m <= 8; ++m)
    for (std::uint64_t k = 1; k <= m; ++k) {
      const Pmf t = excess_resamples_pmf(m, k, 20);
      for (std::uint64_t n = k; n <= 20; ++n) {
        const Pmf cov = coverage_pmf(n, m);
        double reached = 0.0;
        for (std::uint64_t j = k; j <= m; ++j) reached += cov(static_cast<std::int64_t>(j));
        worst = std::max(worst, std::fabs(reached - t.cdf(static_cast<std::int64_t>(n - k))));
      }
    }
  CHECK(worst <= 1e-12);
}

TEST_CASE("conditional excess resamples match the chain") {
  for (std::uint64_t m = 2; m <= 6; ++m)
    for (std::uint64_t c = 1; c < m; ++c)
      for (std::uint64_t more = 1; c + more <= m; ++more) {
        const std::uint64_t r = 3;
        const Pmf cond = excess_resamples_conditional_pmf(m, c, r, more, 25);
        double previous = 0.0;
        for (std::uint64_t extra = 0; extra <= 25; ++extra) {
          const Pmf row = occupancy_by_power(more + extra, m, 1.0, c);
          double reached = 0.0;
          for (std::uint64_t j = c + more; j <= m; ++j) reached += row(static_cast<std::int64_t>(j));
          CHECK(cond(static_cast<std::int64_t>(r + extra)) == doctest::Approx(reached - previous).epsilon(1e-12));
          previous = reached;
        }
        CHECK(cond.cdf(static_cast<std::int64_t>(r) - 1) == 0.0);
      }
}
