// One PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "occkit/chain.hpp"
#include "occkit/coverage.hpp"
#include "occkit/identities.hpp"
#include "occkit/negative_occupancy.hpp"
#include "occkit/occupancy.hpp"
#include "occkit/spillage.hpp"
#include "occkit/stirling.hpp"
#include "oracles.hpp"

using namespace occkit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) detail = what;
    ok = ok && condition;
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double rel(double got, double want) { return std::fabs(got - want) / std::max(std::fabs(want), 1e-300); }

Verdict criterion_1() {
  Verdict v;
  const auto start = Clock::now();
  double worst = 0.0;
  for (int m = 1; m <= 6; ++m)
    for (int n = 0; n <= 8; ++n) {
      const auto brute = oracle::occ_by_allocation(n, m);
      const ExactPmf exact = occ_pmf_exact(n, m, ExactReal(1));
      const Pmf fast = occ_pmf(OccParams(n, m, 1.0));
      for (int k = 0; k <= n; ++k) {
        v.require(exact(k) == brute[k], "exact backend differs from enumeration");
        worst = std::max(worst, std::fabs(fast(k) - brute[k].to_double()));
      }
    }
  const double elapsed = seconds_since(start);
  v.require(worst <= 1e-12, "float recursion off by " + sci(worst));
  v.require(elapsed < 10.0, "too slow");
  v.detail = v.ok ? "max float error " + sci(worst) + ", " + sci(elapsed) + " s" : v.detail;
  return v;
}

Verdict criterion_2() {
  Verdict v;
  const auto start = Clock::now();
  for (const auto& theta : {ExactReal(1, 4), ExactReal(1, 2), ExactReal(3, 4)})
    for (int m = 1; m <= 4; ++m)
      for (int n = 0; n <= 6; ++n) {
        const auto brute = oracle::occ_by_bin_and_flag(n, m, theta);
        const ExactPmf exact = occ_pmf_exact(n, m, theta);
        for (int k = 0; k <= n; ++k) v.require(exact(k) == brute[k], "exact backend differs from enumeration");
      }
  const double elapsed = seconds_since(start);
  v.require(elapsed < 30.0, "too slow");
  if (v.ok) v.detail = "exact equality, " + sci(elapsed) + " s";
  return v;
}

Verdict criterion_3() {
  Verdict v;
  double worst = 0.0;
  for (double theta : {0.25, 0.5, 0.75, 1.0})
    for (std::uint64_t m = 1; m <= 6; ++m) {
      const auto sd = spectral(m, theta);
      for (std::uint64_t t = 0; t <= m; ++t)
        for (std::uint64_t n = 0; n <= 8; ++n) {
          const Pmf direct = t == 0 ? occ_pmf(OccParams(n, m, theta)) : occ_conditional_pmf(n, m, theta, t);
          const Pmf power = occupancy_by_power(n, m, theta, t);
          for (std::uint64_t k = 0; k <= m; ++k) {
            const double s = sd.occupancy_probability(n, t, k);
            worst = std::max({worst, std::fabs(direct(k) - power(k)), std::fabs(direct(k) - s), std::fabs(power(k) - s)});
          }
        }
    }
  v.require(worst <= 1e-10, "disagreement " + sci(worst));
  if (v.ok) v.detail = "max disagreement " + sci(worst);
  return v;
}

Verdict criterion_4() {
  Verdict v;
  const std::vector<ExactReal> phis{ExactReal(0), ExactReal(1, 2), ExactReal(1), ExactReal(3), ExactReal(10)};
  const auto S = [](int n, int k, const ExactReal& phi) { return stirling_noncentral_exact(n, k, phi); };
  double worst_derivative = 0.0;
  for (const auto& phi : phis) {
    const ExactStirlingTable table(12, 12, phi);
    for (int n = 0; n <= 12; ++n)
      for (int k = 0; k <= n + 1; ++k) {
        if (n < 12 && k >= 1) {
          v.require(S(n + 1, k, phi) == (ExactReal(k) + phi) * S(n, k, phi) + S(n, k - 1, phi), "triangular recursion");
          v.require(S(n + 1, k, phi) == phi * S(n, k, phi) + S(n, k - 1, phi + ExactReal(1)), "second recursion");
          ExactReal telescoped(0);
          for (int r = 0; r <= n - k + 1; ++r) telescoped += (ExactReal(k) + phi).pow(r) * S(n - r, k - 1, phi);
          v.require(S(n + 1, k, phi) == telescoped, "telescoping sum");
        }
        v.require(S(n, k, phi + ExactReal(1)) == ExactReal(k + 1) * S(n, k + 1, phi) + S(n, k, phi), "third recursion");
        if (k > n) continue;
        ExactReal central(0);
        for (int i = k; i <= n; ++i) central += oracle::binom(n, i) * phi.pow(n - i) * S(i, k, ExactReal(0));
        v.require(S(n, k, phi) == central, "central expansion");
        for (const auto& delta : {ExactReal(1, 2), ExactReal(2)})
          v.require(shift_noncentrality(n, k, phi + delta, table) == S(n, k, phi + delta), "noncentrality shift");
        if (n >= 1) {
          const double x = phi.to_double();
          const double h = 1e-5 * std::max(1.0, x);
          const auto f = [&](double at) { return stirling_noncentral_scaled(n, k, at).to_double(); };
          const double numeric = x - h >= 0 ? (f(x + h) - f(x - h)) / (2 * h) : (-3 * f(x) + 4 * f(x + h) - f(x + 2 * h)) / (2 * h);
          const double expect = n * S(n - 1, k, phi).to_double();
          const double err = expect == 0.0 ? std::fabs(numeric) : rel(numeric, expect);
          worst_derivative = std::max(worst_derivative, err);
        }
      }
    for (int m = 1; m <= 8; ++m)
      for (int n = 0; n <= 12; ++n) {
        ExactReal sum(0);
        for (int k = 0; k <= n; ++k) sum += oracle::falling(m, k) * S(n, k, phi);
        v.require(sum == (ExactReal(m) + phi).pow(n), "norming identity");
      }
  }
  v.require(worst_derivative <= 1e-6, "derivative error " + sci(worst_derivative));
  if (v.ok) v.detail = "all exact; derivative rel err " + sci(worst_derivative);
  return v;
}

Verdict criterion_5() {
  Verdict v;
  double worst = 0.0;
  for (const auto& theta : {ExactReal(3, 10), ExactReal(7, 10), ExactReal(1)})
    for (int m = 1; m <= 20; ++m)
      for (int n = 1; n <= 40; ++n) {
        const OccParams p(n, m, theta.to_double());
        const ExactPmf pmf = occ_pmf_exact_by_recursion(n, m, theta);
        for (int r = 1; r <= std::min(m, 4); ++r) {
          ExactReal fm(0);
          for (std::size_t k = 0; k < pmf.probabilities.size(); ++k) fm += oracle::falling(m - static_cast<int>(k), r) * pmf.probabilities[k];
          if (!fm.is_zero()) worst = std::max(worst, rel(occ_factorial_moment(p, r), fm.to_double()));
        }
        ExactReal mean(0), c2(0), c3(0), c4(0);
        for (std::size_t k = 0; k < pmf.probabilities.size(); ++k) mean += ExactReal::from_uint(k) * pmf.probabilities[k];
        for (std::size_t k = 0; k < pmf.probabilities.size(); ++k) {
          const ExactReal d = ExactReal::from_uint(k) - mean;
          c2 += d * d * pmf.probabilities[k];
          c3 += d * d * d * pmf.probabilities[k];
          c4 += d * d * d * d * pmf.probabilities[k];
        }
        const MomentSet s = occ_moments(p);
        worst = std::max(worst, rel(s.mean, mean.to_double()));
        if (c2.is_zero()) continue;
        worst = std::max(worst, rel(s.variance, c2.to_double()));
        if (!c3.is_zero()) worst = std::max(worst, rel(s.skewness, (c3 / c2).to_double() / std::sqrt(c2.to_double())));
        worst = std::max(worst, rel(s.kurtosis, (c4 / (c2 * c2)).to_double()));
      }
  v.require(worst <= 1e-8, "moment rel err " + sci(worst));

  double prev_g = INFINITY, prev_k = INFINITY;
  for (std::uint64_t n : {100, 1000, 10000}) {
    const MomentSet a = occ_moments_asymptotic(OccParams(n, n, 1.0), MomentRegime::large_n);
    const MomentSet e = occ_moments(OccParams(n, n, 1.0));
    v.require(std::fabs(a.skewness) < prev_g && std::fabs(a.kurtosis - 3) < prev_k, "approach not monotone");
    prev_g = std::fabs(a.skewness);
    prev_k = std::fabs(a.kurtosis - 3);
    if (n == 10000) {
      v.require(prev_g < 0.05 && prev_k < 0.05, "asymptotic moments not near normal");
      v.require(std::fabs(e.skewness) < 0.05 && std::fabs(e.kurtosis - 3) < 0.05, "exact moments not near normal");
    }
  }
  if (v.ok) v.detail = "max rel err " + sci(worst) + "; |g|=" + sci(prev_g) + ", |k-3|=" + sci(prev_k) + " at 1e4";
  return v;
}

Verdict criterion_6() {
  Verdict v;
  double tv_a = 0.0, tv_b = 0.0, tv_c = 0.0;
  const Pmf a = occ_pmf(OccParams(8, 10000, 0.6));
  for (int k = 0; k <= 8; ++k) tv_a += 0.5 * std::fabs(a(k) - oracle::binomial_double(8, k, 0.6));
  const Pmf b = occ_pmf(OccParams(10000, 4, 2.0 / 10000));
  for (int k = 0; k <= 4; ++k) tv_b += 0.5 * std::fabs(b(k) - oracle::binomial_double(4, k, 1 - std::exp(-0.5)));
  const Pmf c = negocc_pmf(NegOccParams(10000, 3, 0.6), 50);
  for (int t = 0; t <= 50; ++t)
    tv_c += 0.5 * std::fabs(c(t) - oracle::binom(t + 2, t).to_double() * std::pow(0.4, t) * std::pow(0.6, 3));
  const double spill = spillage_pmf(SpillageParams(6, 3, 1e6))(0);
  v.require(tv_a < 1e-3, "binomial limit in m");
  v.require(tv_b < 1e-3, "binomial limit in n");
  v.require(tv_c < 1e-3, "negative binomial limit");
  v.require(spill > 1 - 1e-3, "spillage limit");
  char buf[200];
  std::snprintf(buf, sizeof buf, "TV %.2e, %.2e, %.2e; spillage P(0)=%.7f", tv_a, tv_b, tv_c, spill);
  if (v.ok) v.detail = buf;
  return v;
}

bool is_mixture(const std::string& name) { return name.find("mixture") != std::string::npos || name == "random ball count"; }

Verdict criterion_7() {
  Verdict v;
  const auto start = Clock::now();
  double worst = 0.0;
  for (const auto& r : run_all_checks(CheckGrid::small)) {
    if (!is_mixture(r.name)) continue;
    v.require(r.passed() && r.max_abs_discrepancy <= 1e-10, r.name + " discrepancy " + sci(r.max_abs_discrepancy));
    worst = std::max(worst, r.max_abs_discrepancy);
  }
  for (const auto& r : run_exact_checks()) v.require(r.max_abs_discrepancy == 0.0, r.name + " nonzero in exact mode");
  const double elapsed = seconds_since(start);
  v.require(elapsed < 60.0, "too slow");
  if (v.ok) v.detail = "max " + sci(worst) + ", exact runs 0, " + sci(elapsed) + " s";
  return v;
}

Verdict criterion_8() {
  Verdict v;
  int count = 0;
  for (const auto& r : run_all_checks(CheckGrid::small)) {
    if (r.name.find("dominance") == std::string::npos) continue;
    ++count;
    v.require(r.passed(), r.name + " violated");
    v.require(r.strict_failures == 0, r.name + " not strict at witness");
  }
  v.require(count == 6, "expected six dominance orderings");
  if (v.ok) v.detail = std::to_string(count) + " orderings hold, strict witnesses found";
  return v;
}

Verdict criterion_9() {
  Verdict v;
  const ExactReal mean = coverage_mean_exact(25, 25);
  v.require(mean == ExactReal(1) - ExactReal(24, 25).pow(25), "exact mean");
  const CoverageMoments cm = coverage_moments(25, 25);
  v.require(std::fabs(cm.asymptotic_mean - (1 - std::exp(-1.0))) < 1e-15, "asymptotic mean");
  const CoveragePlan plan = required_resample_size(2, 2, 0.9);
  v.require(plan.n_required == 5 && plan.achieved_probability == 0.9375, "plan");
  const CoverageSimulation sim = simulate_coverage(25, 25, 100000, StreamSeed(20240601));
  v.require(std::fabs(sim.mean_proportion - mean.to_double()) < 0.005, "Monte Carlo mean");
  char buf[200];
  std::snprintf(buf, sizeof buf, "E=%.9f, asym=%.9f, n=%llu, MC=%.5f", mean.to_double(), cm.asymptotic_mean,
                static_cast<unsigned long long>(plan.n_required), sim.mean_proportion);
  if (v.ok) v.detail = buf;
  return v;
}

Verdict criterion_10() {
  Verdict v;
  const Pmf total = coupon_collector_total_pmf(3, 1.0, 200);
  const double oracle_mean = oracle::coupon_mean_total(3).to_double();
  v.require(oracle_mean == 5.5, "harmonic oracle");
  v.require(total.meta().tail_mass < 1e-12, "tail too heavy");
  v.require(std::fabs(total.mean() - oracle_mean) < 1e-10, "mean " + sci(total.mean()));
  char buf[200];
  std::snprintf(buf, sizeof buf, "mean %.15f, tail %.1e", total.mean(), total.meta().tail_mass);
  if (v.ok) v.detail = buf;
  return v;
}

Verdict criterion_11() {
  Verdict v;
  const OccParams p(100000, 1000, 0.5);
  const auto start = Clock::now();
  const Pmf pmf = occ_pmf(p);
  const double elapsed = seconds_since(start);
  const double mean = occ_moments(p).mean;
  v.require(elapsed < 1.0, "took " + sci(elapsed) + " s");
  v.require(std::fabs(pmf.total() - 1.0) <= 1e-9, "mass");
  v.require(rel(pmf.mean(), mean) <= 1e-6, "mean");
  char buf[200];
  std::snprintf(buf, sizeof buf, "%.3f s, |sum-1|=%.1e, mean rel err %.1e", elapsed, std::fabs(pmf.total() - 1.0), rel(pmf.mean(), mean));
  if (v.ok) v.detail = buf;
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"oracle equivalence, classical occupancy", criterion_1},
      {"oracle equivalence, theta < 1", criterion_2},
      {"Markov chain consistency", criterion_3},
      {"Stirling identity suite", criterion_4},
      {"moments", criterion_5},
      {"limit theorems", criterion_6},
      {"mixture suite", criterion_7},
      {"dominance suite", criterion_8},
      {"coverage numbers", criterion_9},
      {"coupon collector mean", criterion_10},
      {"numerical stability", criterion_11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += !v.ok;
    std::printf("%s %2zu %s: %s\n", v.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
