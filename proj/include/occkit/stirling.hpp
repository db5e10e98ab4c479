#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "occkit/exact_real.hpp"
#include "occkit/scaled_float.hpp"

namespace occkit {

enum class Backend { exact, scaled };

/// Noncentral Stirling numbers of the second kind S(n, k, phi), defined by
/// (t + phi)^n = sum_k S(n, k, phi) (t)_k, stored for 0 <= k <= min(n, k_max)
/// and n <= n_max.
///
/// Built column by column from S(n, 0, phi) = phi^n, S(k, k, phi) = 1 and
/// S(n + 1, k, phi) = (k + phi) S(n, k, phi) + S(n, k - 1, phi). With phi >= 0
/// every term is nonnegative, so the scaled backend never cancels.
template <typename Number>
class StirlingTable {
 public:
  StirlingTable(std::size_t n_max, std::size_t k_max, Number phi);

  std::size_t n_max() const { return n_max_; }
  std::size_t k_max() const { return k_max_; }
  const Number& phi() const { return phi_; }

  /// S(n, k, phi); zero for k > n. Throws DomainError outside the table.
  Number at(std::size_t n, std::size_t k) const;

 private:
  std::size_t n_max_;
  std::size_t k_max_;
  Number phi_;
  // columns_[k][n - k]
  std::vector<std::vector<Number>> columns_;
};

using ExactStirlingTable = StirlingTable<ExactReal>;
using ScaledStirlingTable = StirlingTable<ScaledFloat>;

/// Row n of the triangle, S(n, 0..min(n, k_max), phi), with O(n k) time and
/// O(k) memory.
std::vector<ExactReal> stirling_row_exact(std::size_t n, std::size_t k_max, const ExactReal& phi);
std::vector<ScaledFloat> stirling_row_scaled(std::size_t n, std::size_t k_max, double phi);

/// Column k of the triangle, S(k..n_max, k, phi), with O(n k) time and
/// O(n) memory.
std::vector<ScaledFloat> stirling_column_scaled(std::size_t k, std::size_t n_max, double phi);
std::vector<ExactReal> stirling_column_exact(std::size_t k, std::size_t n_max, const ExactReal& phi);

ExactReal stirling_noncentral_exact(std::size_t n, std::size_t k, const ExactReal& phi);
ScaledFloat stirling_noncentral_scaled(std::size_t n, std::size_t k, double phi);

using StirlingValue = std::variant<ExactReal, ScaledFloat>;

/// S(n, k, phi) with the requested backend. In exact mode phi is taken as the
/// exact rational value of the double.
StirlingValue stirling_noncentral(std::size_t n, std::size_t k, double phi, Backend backend);

/// Central numbers S(n, k) = S(n, k, 0); S(n, 0) = [n == 0].
StirlingValue stirling_central(std::size_t n, std::size_t k, Backend backend);

/// Scaled Stirling function Pi(n, k, phi) = S(n, k, phi) / (C(n, k) phi^(n-k)).
///
/// Evaluated as the polynomial in 1/phi
///   sum_{i=0}^{n-k} (n-k)_i / (k+i)_i * S(k+i, k) * phi^-i
/// so the two huge factors are never formed. phi = +inf gives 1; k > n gives 0.
ScaledFloat scaled_stirling_pi(std::size_t n, std::size_t k, double phi);
ExactReal scaled_stirling_pi_exact(std::size_t n, std::size_t k, const ExactReal& phi);

/// S(n, k, phi_to) from a table built at phi_from, via
///   S(n, k, phi') = sum_r C(n, r) (phi' - phi)^r S(n - r, k, phi).
/// The scaled overload requires phi_to >= phi_from (otherwise the sum
/// alternates); the exact overload accepts any direction.
ScaledFloat shift_noncentrality(std::size_t n, std::size_t k, double phi_to,
                                const ScaledStirlingTable& table);
ExactReal shift_noncentrality(std::size_t n, std::size_t k, const ExactReal& phi_to,
                              const ExactStirlingTable& table);

/// Process-wide memo of scaled tables keyed by phi. Tables are immutable once
/// published; a request for a larger shape rebuilds and replaces the entry.
std::shared_ptr<const ScaledStirlingTable> cached_scaled_table(double phi, std::size_t n_max,
                                                               std::size_t k_max);

}  // namespace occkit
