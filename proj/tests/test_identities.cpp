#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "occkit/errors.hpp"
#include "occkit/identities.hpp"
#include "occkit/negative_occupancy.hpp"
#include "occkit/occupancy.hpp"
#include "occkit/reference.hpp"
#include "oracles.hpp"

using namespace occkit;

namespace {

double poisson_oracle(int r, double lambda) { return std::exp(r * std::log(lambda) - lambda - std::lgamma(r + 1.0)); }

}  // namespace

TEST_CASE("random ball count with fixed, binomial and Poisson N") {
  for (std::uint64_t m : {1, 3, 5})
    for (double theta : {0.4, 1.0}) {
      const auto fixed = check_random_ball_count(Pmf::point_mass(6, "fixed"), [](double z) { return std::pow(z, 6); }, m, theta);
      CHECK(fixed.max_abs_discrepancy <= 1e-12);
      CHECK(fixed.passed());
    }

  // The alternating sum with a Bin(n, t2) pgf is Occ(k | n, m, theta t2).
  const std::uint64_t n = 7, m = 4;
  const double theta = 0.6, t2 = 0.3;
  const auto pgf = [&](double z) { return std::pow(1 - t2 + t2 * z, static_cast<double>(n)); };
  CHECK(check_random_ball_count(binomial_pmf(n, t2), pgf, m, theta).passed());
  const Pmf target = occ_pmf(OccParams(n, m, theta * t2));
  for (int k = 0; k <= 4; ++k) {
    double alt = 0.0;
    for (int i = 0; i <= k; ++i) alt += (((k - i) % 2) ? -1.0 : 1.0) * oracle::binom(k, i).to_double() * pgf(1 - theta * (m - i) / double(m));
    alt *= oracle::binom(m, k).to_double();
    CHECK(alt == doctest::Approx(target(k)).epsilon(1e-11));
  }

  // Poisson N gives Bin(k | m, 1 - exp(-lambda theta / m)).
  const double lambda = 3.0;
  const Pmf law = poisson_pmf(lambda, 1e-15);
  const auto report = check_random_ball_count(law, [&](double z) { return std::exp(lambda * (z - 1)); }, m, theta);
  CHECK(report.passed());
  for (int k = 0; k <= 4; ++k) {
    double mixed = 0.0;
    for (int r = 0; r <= 80; ++r) mixed += poisson_oracle(r, lambda) * occ_pmf(OccParams(r, m, theta))(k);
    CHECK(mixed == doctest::Approx(oracle::binomial_double(4, k, 1 - std::exp(-lambda * theta / 4))).epsilon(1e-11));
  }
}

TEST_CASE("random ball count detects a mismatched pgf") {
  const auto bad = check_random_ball_count(Pmf::point_mass(4, "fixed"), [](double z) { return std::pow(z, 5); }, 3, 0.7);
  CHECK(bad.max_abs_discrepancy > 1e-3);
  CHECK_FALSE(bad.passed());
  CHECK_THROWS_AS(check_random_ball_count(Pmf::point_mass(4, "fixed"), [](double z) { return 0.5 * z; }, 3, 0.7), DomainError);
}

TEST_CASE("binomial mixture of occupancy distributions") {
  const auto r = check_occ_binomial_mixture(6, 4, 0.7, 0.5);
  CHECK(r.max_abs_discrepancy <= 1e-12);
  CHECK(r.passed());
  CHECK(check_occ_binomial_mixture(5, 3, 1.0, 1.0).max_abs_discrepancy <= 1e-12);
  CHECK(check_occ_binomial_mixture(6, BinCount::infinite(), 0.7, 0.5).max_abs_discrepancy <= 1e-12);
  // Independent statement of the m = inf case.
  for (int k = 0; k <= 6; ++k) {
    double mix = 0.0;
    for (int j = k; j <= 6; ++j) mix += oracle::binomial_double(6, j, 0.7) * oracle::binomial_double(j, k, 0.5);
    CHECK(mix == doctest::Approx(oracle::binomial_double(6, k, 0.35)).epsilon(1e-12));
  }
  CHECK(check_occ_binomial_mixture_exact(5, 3, ExactReal(7, 10), ExactReal(1, 2)).max_abs_discrepancy == 0.0);
}

TEST_CASE("Poisson mixture of occupancy distributions") {
  CHECK(check_binomial_poisson_mixture(3.0, 4, 0.6, 1e-12).max_abs_discrepancy <= 1e-10);
  CHECK(check_binomial_poisson_mixture(2.0, 1, 0.5, 1e-12).passed());
  CHECK(check_binomial_poisson_mixture_gamma(0.4, 5, 0.8, 1e-12).passed());
  // Single bin: Bin(k | 1, 1 - exp(-lambda theta)) directly.
  double mixed_one = 0.0;
  for (int r = 0; r <= 80; ++r) mixed_one += poisson_oracle(r, 2.0) * occ_pmf(OccParams(r, 1, 0.5))(1);
  CHECK(mixed_one == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("negative binomial mixture of negative occupancy") {
  const auto r = check_negocc_mixture(5, 3, 0.8, 0.6, 40);
  CHECK(r.max_abs_discrepancy <= 1e-12);
  CHECK(check_negocc_mixture(5, 3, 0.8, 1.0, 40).passed());
  CHECK(check_negocc_mixture(BinCount::infinite(), 3, 0.8, 0.6, 40).passed());
  CHECK(check_negocc_mixture_exact(4, 2, ExactReal(4, 5), ExactReal(3, 5), 6).max_abs_discrepancy == 0.0);

  const std::uint64_t m = 10000, k = 3;
  CHECK(check_negocc_mixture(m, k, 0.8, 0.6, 50).passed());
  const Pmf lhs = negocc_pmf(NegOccParams(m, k, 0.48), 50);
  double worst = 0.0;
  for (int t = 0; t <= 50; ++t) {
    const double nb = oracle::binom(k + t - 1, t).to_double() * std::pow(0.52, t) * std::pow(0.48, k);
    worst = std::max(worst, std::fabs(lhs(t) - nb));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("spillage mixture of occupancy distributions") {
  CHECK(check_spillage_mixture(5, 3, 0.5).max_abs_discrepancy <= 1e-12);
  CHECK(check_spillage_mixture(6, 3, 1.0).max_abs_discrepancy <= 1e-12);
  CHECK(check_spillage_mixture(6, BinCount::infinite(), 0.4).max_abs_discrepancy <= 1e-12);
  CHECK(check_spillage_mixture_exact(5, 3, ExactReal(1, 2)).max_abs_discrepancy == 0.0);
}

TEST_CASE("occupancy recursions and the theta derivative") {
  for (std::uint64_t m = 1; m <= 6; ++m)
    for (std::uint64_t n = 0; n <= 8; ++n)
      for (double theta : {0.3, 0.7}) {
        CHECK(check_occ_n_recursion(n, m, theta).passed());
        CHECK(check_occ_m_recursion(n, m, theta).passed());
        CHECK(check_occ_m_recursion(n, m, theta).max_abs_discrepancy <= 1e-12);
        CHECK(check_occ_derivative(n, m, theta).passed());
      }
  CHECK(check_occ_derivative(6, 4, 1.0).passed());
}

TEST_CASE("the theta derivative of Occ carries a factor n") {
  const std::uint64_t n = 5, m = 4;
  const double theta = 0.6, h = 1e-5;
  const Pmf up = occ_pmf(OccParams(n, m, theta + h));
  const Pmf down = occ_pmf(OccParams(n, m, theta - h));
  const Pmf prev = occ_pmf(OccParams(n - 1, m, theta));
  for (int k = 1; k <= 4; ++k) {
    const double numeric = (up(k) - down(k)) / (2 * h);
    const double bracket = -double(m - k) / m * prev(k) + double(m - k + 1) / m * prev(k - 1);
    CHECK(numeric == doctest::Approx(n * bracket).epsilon(1e-6));
    CHECK(std::fabs(numeric - bracket) > 1e-3);
  }
}

TEST_CASE("negative occupancy recursions and derivative") {
  for (std::uint64_t m = 1; m <= 6; ++m)
    for (std::uint64_t k = 1; k <= m; ++k)
      for (double theta : {0.3, 0.7, 1.0}) {
        CHECK(check_negocc_m_recursion(m, k, theta, 15).passed());
        if (k < m) CHECK(check_negocc_k_recursion(m, k, theta, 15).passed());
        CHECK(check_negocc_derivative(m, k, theta, 15).passed());
      }
}

TEST_CASE("stochastic dominance orderings") {
  const std::vector<double> thetas{0.3, 0.7, 1.0};
  for (std::uint64_t m = 1; m <= 6; ++m)
    for (double theta : thetas) {
      const auto r = check_occ_dominance_n({0, 1, 2, 4, 7}, m, theta);
      CHECK(r.passed());
      CHECK(r.strict_failures == 0);
    }
  for (std::uint64_t n = 0; n <= 7; ++n) {
    CHECK(check_occ_dominance_m(n, {1, 2, 3, 5, 8}, 0.7).passed());
    CHECK(check_occ_dominance_theta(n, 4, thetas).passed());
  }
  for (std::uint64_t k = 1; k <= 3; ++k) CHECK(check_negocc_dominance_m({3, 4, 6, 9}, k, 0.7, 50).passed());
  CHECK(check_negocc_dominance_k(6, {1, 2, 4, 6}, 0.7, 50).passed());
  CHECK(check_negocc_dominance_theta(5, 3, thetas, 50).passed());
}

TEST_CASE("the first hitting time does not depend on m") {
  // T_1 is geometric with parameter theta whatever m is, so the m-ordering
  // can only be strict for k > 1.
  const Pmf a = negocc_pmf(NegOccParams(2, 1, 0.4), 30);
  const Pmf b = negocc_pmf(NegOccParams(9, 1, 0.4), 30);
  CHECK(sup_distance(a, b) <= 1e-15);
}

TEST_CASE("default grid: every report within tolerance") {
  const auto reports = run_all_checks(CheckGrid::small);
  CHECK(reports.size() >= 15);
  for (const auto& r : reports) {
    INFO(r.name);
    CHECK(r.passed());
    CHECK(r.max_abs_discrepancy >= 0.0);
    CHECK_FALSE(r.grid.empty());
    bool member = false;
    for (const auto& g : r.grid) member = member || g == r.worst_case;
    CHECK(member);
    if (r.name.find("derivative") == std::string::npos && r.name.find("dominance") == std::string::npos)
      CHECK(r.max_abs_discrepancy <= 1e-10);
  }
  const auto again = run_all_checks(CheckGrid::small);
  REQUIRE(again.size() == reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(again[i].max_abs_discrepancy == reports[i].max_abs_discrepancy);
    CHECK(again[i].worst_case == reports[i].worst_case);
  }
}

TEST_CASE("exact runs report zero") {
  for (const auto& r : run_exact_checks()) {
    INFO(r.name);
    CHECK(r.max_abs_discrepancy == 0.0);
  }
}
