#pragma once

// Reference computations that share no code with the library's evaluation
// paths. Everything here is brute force or a textbook closed form.

#include <cstdint>
#include <vector>

#include "occkit/exact_real.hpp"

namespace oracle {

using occkit::ExactReal;

// counts[j][k]: number of ball sequences over {fall-through, 1..m} with j
// fall-throughs and k distinct occupied bins.
inline void enumerate_sequences(int ball, int n, int m, std::uint32_t mask, int fall,
                                std::vector<std::vector<std::uint64_t>>& counts) {
  if (ball == n) {
    ++counts[fall][__builtin_popcount(mask)];
    return;
  }
  enumerate_sequences(ball + 1, n, m, mask, fall + 1, counts);
  for (int bin = 0; bin < m; ++bin) enumerate_sequences(ball + 1, n, m, mask | (1U << bin), fall, counts);
}

inline std::vector<std::vector<std::uint64_t>> sequence_counts(int n, int m) {
  std::vector<std::vector<std::uint64_t>> counts(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  enumerate_sequences(0, n, m, 0, 0, counts);
  return counts;
}

// P(K_n = k) for k = 0..n by weighting enumerated outcomes.
inline std::vector<ExactReal> occ_from_counts(const std::vector<std::vector<std::uint64_t>>& counts, int m,
                                              const ExactReal& theta) {
  const int n = static_cast<int>(counts.size()) - 1;
  const ExactReal fall = ExactReal(1) - theta;
  const ExactReal land = theta / ExactReal(m);
  std::vector<ExactReal> out(n + 1, ExactReal(0));
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k)
      if (counts[j][k] != 0) out[k] += ExactReal::from_uint(counts[j][k]) * fall.pow(j) * land.pow(n - j);
  return out;
}

// P(K_n = k) for k = 0..n by exhaustive enumeration of (bin, occupy) outcomes.
inline std::vector<ExactReal> occ_by_enumeration(int n, int m, const ExactReal& theta) {
  return occ_from_counts(sequence_counts(n, m), m, theta);
}

// Classical case: every one of the m^n allocations equally likely.
inline std::vector<ExactReal> occ_by_allocation(int n, int m) {
  std::vector<std::uint64_t> counts(n + 1, 0);
  std::vector<int> bins(n, 0);
  while (true) {
    std::uint32_t mask = 0;
    for (int b : bins) mask |= 1U << b;
    ++counts[__builtin_popcount(mask)];
    int i = 0;
    while (i < n && ++bins[i] == m) bins[i++] = 0;
    if (i == n) break;
  }
  const ExactReal total = ExactReal(m).pow(n);
  std::vector<ExactReal> out;
  for (auto c : counts) out.push_back(ExactReal::from_uint(c) / total);
  return out;
}

// Same law from the m^n * 2^n (bin vector, occupy flags) pairs taken
// literally: flags select which balls land.
inline std::vector<ExactReal> occ_by_bin_and_flag(int n, int m, const ExactReal& theta) {
  std::vector<std::vector<std::uint64_t>> counts(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  std::vector<int> bins(n, 0);
  while (true) {
    for (std::uint32_t flags = 0; flags < (1U << n); ++flags) {
      std::uint32_t mask = 0;
      for (int i = 0; i < n; ++i)
        if (flags & (1U << i)) mask |= 1U << bins[i];
      ++counts[__builtin_popcount(flags)][__builtin_popcount(mask)];
    }
    int i = 0;
    while (i < n && ++bins[i] == m) bins[i++] = 0;
    if (i == n) break;
  }
  const ExactReal total = ExactReal(m).pow(n);
  std::vector<ExactReal> out(n + 1, ExactReal(0));
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k)
      if (counts[j][k] != 0)
        out[k] += ExactReal::from_uint(counts[j][k]) * theta.pow(j) * (ExactReal(1) - theta).pow(n - j) / total;
  return out;
}

inline ExactReal factorial(int n) {
  ExactReal out(1);
  for (int i = 2; i <= n; ++i) out *= ExactReal(i);
  return out;
}

inline ExactReal binom(int n, int k) {
  if (k < 0 || k > n) return ExactReal(0);
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// S(n,k,phi) = (1/k!) sum_i C(k,i) (-1)^(k-i) (i + phi)^n.
inline ExactReal stirling_alternating(int n, int k, const ExactReal& phi) {
  ExactReal sum(0);
  for (int i = 0; i <= k; ++i) {
    ExactReal term = binom(k, i) * (ExactReal(i) + phi).pow(n);
    sum += ((k - i) % 2 == 0) ? term : -term;
  }
  return sum / factorial(k);
}

// Number of partitions of an n-set into k nonempty blocks, by enumerating
// restricted growth strings.
inline std::uint64_t count_partitions(int n, int k) {
  if (n == 0) return k == 0 ? 1 : 0;
  std::uint64_t count = 0;
  std::vector<int> a(n, 0);
  auto rec = [&](auto&& self, int i, int blocks) -> void {
    if (i == n) {
      if (blocks == k) ++count;
      return;
    }
    for (int b = 0; b <= blocks && b < k; ++b) {
      a[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  rec(rec, 0, 0);
  return count;
}

inline ExactReal falling(int m, int k) {
  ExactReal out(1);
  for (int i = 0; i < k; ++i) out *= ExactReal(m - i);
  return out;
}

// Expected total number of draws to collect all m coupons: m H_m.
inline ExactReal coupon_mean_total(int m) {
  ExactReal h(0);
  for (int i = 1; i <= m; ++i) h += ExactReal(1, i);
  return ExactReal(m) * h;
}

// Row t of P^n by dense exact matrix multiplication.
inline std::vector<ExactReal> dense_power_row(int n, int m, const ExactReal& theta, int t) {
  std::vector<std::vector<ExactReal>> p(m + 1, std::vector<ExactReal>(m + 1, ExactReal(0)));
  for (int i = 0; i <= m; ++i) {
    const ExactReal up = theta * ExactReal(m - i, m);
    p[i][i] = ExactReal(1) - up;
    if (i < m) p[i][i + 1] = up;
  }
  std::vector<ExactReal> row(m + 1, ExactReal(0));
  row[t] = ExactReal(1);
  for (int step = 0; step < n; ++step) {
    std::vector<ExactReal> next(m + 1, ExactReal(0));
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m; ++j)
        if (!row[i].is_zero() && !p[i][j].is_zero()) next[j] += row[i] * p[i][j];
    row = std::move(next);
  }
  return row;
}

inline double binomial_double(int n, int k, double p) {
  return binom(n, k).to_double() * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

}  // namespace oracle
