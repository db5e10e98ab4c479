#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "occkit/exact_real.hpp"
#include "occkit/params.hpp"
#include "occkit/pmf.hpp"

namespace occkit {

/// Named parameter values of one grid point; +inf prints as "inf".
struct ParamTuple {
  std::vector<std::pair<std::string, double>> values;

  std::string str() const;
  friend bool operator==(const ParamTuple&, const ParamTuple&) = default;
};

struct IdentityReport {
  std::string name;
  std::vector<ParamTuple> grid;
  double max_abs_discrepancy = 0.0;
  ParamTuple worst_case;
  double tolerance = 0.0;
  /// Grid points where a strict inequality was asserted but not observed.
  std::size_t strict_failures = 0;

  bool passed() const { return max_abs_discrepancy <= tolerance && strict_failures == 0; }
  /// Adds one grid point; keeps the first worst case on ties.
  void record(ParamTuple point, double discrepancy);
  /// Folds another report for the same identity into this one.
  void merge(const IdentityReport& other);
};

// Mixture identities. Each side is evaluated through a different backend.

/// P(K_N = k) = C(m,k) sum_i C(k,i) (-1)^(k-i) G_N(1 - theta (m-i)/m) against
/// sum_n P(N = n) Occ(k | n, m, theta). `ball_law` is the law of N (its
/// tail_mass is added to the tolerance); `pgf` is its generating function.
IdentityReport check_random_ball_count(const Pmf& ball_law, const std::function<double(double)>& pgf,
                                       std::uint64_t m, double theta);
IdentityReport check_random_ball_count_exact(const ExactPmf& ball_law,
                                             const std::function<ExactReal(const ExactReal&)>& pgf,
                                             std::uint64_t m, const ExactReal& theta);

/// Occ(k | n, m, gamma theta) = sum_r Bin(r | n, theta) Occ(k | r, m, gamma),
/// together with the gamma = 1 form.
IdentityReport check_occ_binomial_mixture(std::uint64_t n, BinCount m, double theta, double gamma);
IdentityReport check_occ_binomial_mixture_exact(std::uint64_t n, std::uint64_t m, const ExactReal& theta,
                                                const ExactReal& gamma);

/// Bin(k | m, 1 - exp(-lambda theta / m)) = sum_r Pois(r | lambda) Occ(k | r, m, theta),
/// the Poisson sum truncated at tail mass truncation_tail.
IdentityReport check_binomial_poisson_mixture(double lambda, std::uint64_t m, double theta, double truncation_tail);
/// Bin(k | m, gamma) = sum_r Pois(r | m |ln(1 - gamma)| / theta) Occ(k | r, m, theta), 0 < gamma < 1.
IdentityReport check_binomial_poisson_mixture_gamma(double gamma, std::uint64_t m, double theta,
                                                    double truncation_tail);

/// NegOcc(t | m, k, gamma theta) = sum_r NegBin(t - r | k + r, 1 - theta) NegOcc(r | m, k, gamma)
/// for t <= t_max, together with the gamma = 1 form.
IdentityReport check_negocc_mixture(BinCount m, std::uint64_t k, double theta, double gamma, std::uint64_t t_max);
IdentityReport check_negocc_mixture_exact(std::uint64_t m, std::uint64_t k, const ExactReal& theta,
                                          const ExactReal& gamma, std::uint64_t t_max);

/// Bin(s | n, theta) = sum_k Spillage(s - k | n, k, m(1-theta)/theta) Occ(k | n, m, theta).
IdentityReport check_spillage_mixture(std::uint64_t n, BinCount m, double theta);
IdentityReport check_spillage_mixture_exact(std::uint64_t n, std::uint64_t m, const ExactReal& theta);

// Recursive and differential equations.

/// Forward recursion in n, evaluated on the Stirling closed form.
IdentityReport check_occ_n_recursion(std::uint64_t n, std::uint64_t m, double theta);
/// Occ(k | n, m+1, theta) = (m+1)/(m-k+1) (1 - theta/(m+1))^n Occ(k | n, m, m theta / (1 - theta + m)).
IdentityReport check_occ_m_recursion(std::uint64_t n, std::uint64_t m, double theta);
/// d/dtheta Occ(k | n) = n [ -(m-k)/m Occ(k | n-1) + (m-k+1)/m Occ(k-1 | n-1) ]
/// against a finite difference with step h.
IdentityReport check_occ_derivative(std::uint64_t n, std::uint64_t m, double theta, double h = 1e-5);

/// NegOcc(t | m+1, k, theta) = (m+1)/(m-k+1) (1 - theta/(m+1))^(k+t) NegOcc(t | m, k, m theta / (1 - theta + m)).
IdentityReport check_negocc_m_recursion(std::uint64_t m, std::uint64_t k, double theta, std::uint64_t t_max);
/// NegOcc(t | m, k+1, theta) = theta (m-k)/m sum_i (1 - theta (m-k)/m)^i NegOcc(t - i | m, k, theta).
IdentityReport check_negocc_k_recursion(std::uint64_t m, std::uint64_t k, double theta, std::uint64_t t_max);
/// d/dtheta NegOcc(t | m, k) = NegOcc(t)/theta
///   + (k+t-1) (m-k+1)/m [NegOcc(t | m, k-1) - NegOcc(t-1 | m, k)],
/// with NegOcc( . | m, 0) = 0, against a finite difference with step h.
IdentityReport check_negocc_derivative(std::uint64_t m, std::uint64_t k, double theta, std::uint64_t t_max,
                                       double h = 1e-5);

// First-order stochastic dominance. Discrepancy is the largest CDF violation;
// where strictness is asserted, the largest gap must exceed the tolerance.

/// For each adjacent pair along n, m and theta on the given values.
IdentityReport check_occ_dominance_n(const std::vector<std::uint64_t>& ns, std::uint64_t m, double theta);
IdentityReport check_occ_dominance_m(std::uint64_t n, const std::vector<std::uint64_t>& ms, double theta);
IdentityReport check_occ_dominance_theta(std::uint64_t n, std::uint64_t m, const std::vector<double>& thetas);
IdentityReport check_negocc_dominance_m(const std::vector<std::uint64_t>& ms, std::uint64_t k, double theta,
                                        std::uint64_t t_max);
IdentityReport check_negocc_dominance_k(std::uint64_t m, const std::vector<std::uint64_t>& ks, double theta,
                                        std::uint64_t t_max);
IdentityReport check_negocc_dominance_theta(std::uint64_t m, std::uint64_t k, const std::vector<double>& thetas,
                                            std::uint64_t t_max);

enum class CheckGrid { small, full };

struct GridSpec {
  std::uint64_t max_n = 8;
  std::uint64_t max_m = 8;
  std::vector<double> thetas{0.3, 0.7, 1.0};
  std::vector<double> gammas{0.3, 0.7, 1.0};
  std::vector<double> lambdas{1.0, 3.0};
  std::uint64_t t_max = 12;

  static GridSpec make(CheckGrid grid);
};

/// Every identity over the grid, one merged report per identity, in a fixed order.
std::vector<IdentityReport> run_all_checks(CheckGrid grid = CheckGrid::small);
std::vector<IdentityReport> run_all_checks(const GridSpec& spec);

/// The mixture identities in exact rationals (theta, gamma as 3/10, 7/10, 1).
/// Every discrepancy is exactly zero when the identities hold.
std::vector<IdentityReport> run_exact_checks(std::uint64_t max_n = 6, std::uint64_t max_m = 5,
                                             std::uint64_t t_max = 6);

}  // namespace occkit
