#pragma once

#include <cstdint>
#include <vector>

#include "occkit/exact_real.hpp"
#include "occkit/pmf.hpp"
#include "occkit/rng.hpp"

namespace occkit {

using Matrix = std::vector<std::vector<double>>;
using ExactMatrix = std::vector<std::vector<ExactReal>>;

/// Transition matrix of the occupancy number K_n over states 0..m. Row t has
/// 1 - theta (1 - t/m) on the diagonal and theta (1 - t/m) just above it;
/// only those two bands are stored.
class TransitionMatrix {
 public:
  TransitionMatrix(std::uint64_t m, double theta);

  std::uint64_t m() const { return m_; }
  double theta() const { return theta_; }

  /// P(K_{n+1} = t + 1 | K_n = t).
  double advance(std::uint64_t t) const;
  /// P(K_{n+1} = t | K_n = t).
  double stay(std::uint64_t t) const;
  double operator()(std::uint64_t row, std::uint64_t col) const;

  /// Full (m+1) x (m+1) matrix; intended for small m.
  Matrix dense() const;

 private:
  std::uint64_t m_;
  double theta_;
};

TransitionMatrix build_transition(std::uint64_t m, double theta);

/// Row start_t of P^n, i.e. the law of K after n further balls given K = start_t,
/// by n bidiagonal vector-matrix products (O(n m)).
Pmf occupancy_by_power(std::uint64_t n, std::uint64_t m, double theta, std::uint64_t start_t);

/// Eigen-decomposition P = v diag(lambda) w with lambda_i = 1 - (1 - i/m) theta,
/// v_ij = C(m-i, j-i) and w_ij = (-1)^(i-j) C(m-i, j-i) = (v^-1)_ij.
///
/// Evaluating P^n through it is an alternating sum, so this is a validation
/// path; construction refuses m above `max_m`.
class SpectralDecomposition {
 public:
  static constexpr std::uint64_t default_max_m = 200;

  SpectralDecomposition(std::uint64_t m, double theta, std::uint64_t max_m = default_max_m);

  std::uint64_t m() const { return m_; }
  double theta() const { return theta_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const Matrix& v() const { return v_; }
  const Matrix& w() const { return w_; }

  /// [P^n]_{t,k} = sum_i lambda_i^n v_ti w_ik in double precision.
  double occupancy_probability(std::uint64_t n, std::uint64_t t, std::uint64_t k) const;
  /// Same sum in exact arithmetic, theta taken as its exact binary value.
  ExactReal occupancy_probability_exact(std::uint64_t n, std::uint64_t t, std::uint64_t k) const;
  /// Row t of P^n from the double-precision sum.
  std::vector<double> row(std::uint64_t n, std::uint64_t t) const;

  std::vector<ExactReal> eigenvalues_exact() const;
  ExactMatrix v_exact() const;
  ExactMatrix w_exact() const;
  /// v diag(lambda) w formed exactly, rounded to double at the end.
  Matrix reconstruct() const;

 private:
  std::uint64_t m_;
  double theta_;
  std::vector<double> eigenvalues_;
  Matrix v_;
  Matrix w_;
};

SpectralDecomposition spectral(std::uint64_t m, double theta);

/// One realisation of n balls. assignments[i] is 0 when ball i fell through,
/// otherwise its bin in 1..m; bin_counts[l - 1] counts occupying balls in bin l.
struct ProcessSample {
  std::vector<std::uint64_t> assignments;
  std::vector<std::uint64_t> bin_counts;
  std::uint64_t occupancy = 0;
  std::uint64_t effective = 0;

  /// K_0, K_1, ..., K_n along the realised sequence.
  std::vector<std::uint64_t> occupancy_path() const;
};

/// Draws the bin of each ball uniformly and, independently, whether it
/// occupies (probability theta). Deterministic for a given seed.
ProcessSample simulate_process(std::uint64_t n, std::uint64_t m, double theta, StreamSeed seed);

/// Occupancy number only, without storing assignments.
std::uint64_t simulate_occupancy(std::uint64_t n, std::uint64_t m, double theta, StreamSeed seed);

}  // namespace occkit
