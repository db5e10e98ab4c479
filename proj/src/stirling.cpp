#include "occkit/stirling.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "occkit/errors.hpp"

namespace occkit {

namespace {

ExactReal from_count(std::uint64_t k, const ExactReal*) { return ExactReal::from_uint(k); }
ScaledFloat from_count(std::uint64_t k, const ScaledFloat*) { return ScaledFloat(static_cast<double>(k)); }

template <typename Number>
Number count(std::uint64_t k) {
  return from_count(k, static_cast<const Number*>(nullptr));
}

void check_budget(const ExactReal& x, const char* where) { enforce_digit_budget(x, where); }
void check_budget(const ScaledFloat&, const char*) {}

void validate_phi(double phi) {
  if (std::isnan(phi) || phi < 0.0) throw DomainError("noncentrality phi must be >= 0");
  if (!std::isfinite(phi)) throw DomainError("noncentrality phi must be finite");
}

void validate_phi(const ExactReal& phi) {
  if (phi.sign() < 0) throw DomainError("noncentrality phi must be >= 0");
}

void validate_phi(const ScaledFloat& phi) {
  if (phi.sign() < 0) throw DomainError("noncentrality phi must be >= 0");
}

template <typename Number>
std::vector<Number> row_impl(std::size_t n, std::size_t k_max, const Number& phi) {
  const std::size_t width = std::min(n, k_max) + 1;
  std::vector<Number> row(width, Number(0));
  row[0] = Number(1);
  for (std::size_t i = 0; i < n; ++i) {
    // Row i -> row i + 1, in place from the right.
    const std::size_t top = std::min(i + 1, width - 1);
    for (std::size_t j = top; j >= 1; --j) {
      row[j] = (count<Number>(j) + phi) * row[j] + row[j - 1];
      check_budget(row[j], "stirling_row");
    }
    row[0] = phi * row[0];
    check_budget(row[0], "stirling_row");
  }
  return row;
}

template <typename Number>
std::vector<Number> column_impl(std::size_t k, std::size_t n_max, const Number& phi) {
  if (k > n_max) return {};
  std::vector<Number> column;
  column.reserve(n_max - k + 1);
  std::vector<Number> row(k + 1, Number(0));
  row[0] = Number(1);
  if (k == 0) column.push_back(row[0]);
  for (std::size_t i = 0; i < n_max; ++i) {
    const std::size_t top = std::min(i + 1, k);
    for (std::size_t j = top; j >= 1; --j) {
      row[j] = (count<Number>(j) + phi) * row[j] + row[j - 1];
      check_budget(row[j], "stirling_column");
    }
    row[0] = phi * row[0];
    if (i + 1 >= k) column.push_back(row[k]);
  }
  return column;
}

template <typename Number>
Number shift_impl(std::size_t n, std::size_t k, const Number& delta, const StirlingTable<Number>& table) {
  if (n > table.n_max() || k > table.k_max()) {
    throw DomainError("shift_noncentrality: (n, k) outside the supplied table");
  }
  if (k > n) return Number(0);
  Number total(0);
  Number binom(1);
  Number delta_pow(1);
  for (std::size_t r = 0; r <= n - k; ++r) {
    total += binom * delta_pow * table.at(n - r, k);
    binom = binom * count<Number>(n - r) / count<Number>(r + 1);
    delta_pow = delta_pow * delta;
  }
  return total;
}

}  // namespace

template <typename Number>
StirlingTable<Number>::StirlingTable(std::size_t n_max, std::size_t k_max, Number phi)
    : n_max_(n_max), k_max_(std::min(k_max, n_max)), phi_(std::move(phi)) {
  validate_phi(phi_);
  columns_.resize(k_max_ + 1);
  auto& first = columns_[0];
  first.reserve(n_max_ + 1);
  first.emplace_back(1);
  for (std::size_t n = 1; n <= n_max_; ++n) {
    first.push_back(first.back() * phi_);
    check_budget(first.back(), "StirlingTable");
  }
  for (std::size_t k = 1; k <= k_max_; ++k) {
    const auto& prev = columns_[k - 1];  // prev[i] = S(i + k - 1, k - 1)
    auto& col = columns_[k];
    col.reserve(n_max_ - k + 1);
    col.emplace_back(1);
    const Number factor = count<Number>(k) + phi_;
    for (std::size_t n = k; n < n_max_; ++n) {
      // S(n + 1, k) = (k + phi) S(n, k) + S(n, k - 1)
      col.push_back(factor * col[n - k] + prev[n - k + 1]);
      check_budget(col.back(), "StirlingTable");
    }
  }
}

template <typename Number>
Number StirlingTable<Number>::at(std::size_t n, std::size_t k) const {
  if (n > n_max_) throw DomainError("StirlingTable: n outside table");
  if (k > n) return Number(0);
  if (k > k_max_) throw DomainError("StirlingTable: k outside table");
  return columns_[k][n - k];
}

template class StirlingTable<ExactReal>;
template class StirlingTable<ScaledFloat>;

std::vector<ExactReal> stirling_row_exact(std::size_t n, std::size_t k_max, const ExactReal& phi) {
  validate_phi(phi);
  return row_impl<ExactReal>(n, k_max, phi);
}

std::vector<ScaledFloat> stirling_row_scaled(std::size_t n, std::size_t k_max, double phi) {
  validate_phi(phi);
  return row_impl<ScaledFloat>(n, k_max, ScaledFloat(phi));
}

std::vector<ScaledFloat> stirling_column_scaled(std::size_t k, std::size_t n_max, double phi) {
  validate_phi(phi);
  return column_impl<ScaledFloat>(k, n_max, ScaledFloat(phi));
}

std::vector<ExactReal> stirling_column_exact(std::size_t k, std::size_t n_max, const ExactReal& phi) {
  validate_phi(phi);
  return column_impl<ExactReal>(k, n_max, phi);
}

ExactReal stirling_noncentral_exact(std::size_t n, std::size_t k, const ExactReal& phi) {
  validate_phi(phi);
  if (k > n) return ExactReal(0);
  return row_impl<ExactReal>(n, k, phi)[k];
}

ScaledFloat stirling_noncentral_scaled(std::size_t n, std::size_t k, double phi) {
  validate_phi(phi);
  if (k > n) return ScaledFloat::zero();
  return row_impl<ScaledFloat>(n, k, ScaledFloat(phi))[k];
}

StirlingValue stirling_noncentral(std::size_t n, std::size_t k, double phi, Backend backend) {
  validate_phi(phi);
  if (backend == Backend::exact) return stirling_noncentral_exact(n, k, ExactReal::from_double(phi));
  return stirling_noncentral_scaled(n, k, phi);
}

StirlingValue stirling_central(std::size_t n, std::size_t k, Backend backend) {
  return stirling_noncentral(n, k, 0.0, backend);
}

namespace {

// Central column S(k..n, k) shared by every Pi evaluation with the same k.
std::vector<ScaledFloat> central_column(std::size_t k, std::size_t n_max) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const std::vector<ScaledFloat>>> cache;
  std::shared_ptr<const std::vector<ScaledFloat>> hit;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(k); it != cache.end() && it->second->size() >= n_max - k + 1) hit = it->second;
  }
  if (!hit) {
    auto built = std::make_shared<const std::vector<ScaledFloat>>(column_impl<ScaledFloat>(k, n_max, ScaledFloat(0.0)));
    std::lock_guard lock(mutex);
    auto& slot = cache[k];
    if (!slot || slot->size() < built->size()) slot = built;
    hit = slot;
  }
  return {hit->begin(), hit->begin() + static_cast<std::ptrdiff_t>(n_max - k + 1)};
}

}  // namespace

ScaledFloat scaled_stirling_pi(std::size_t n, std::size_t k, double phi) {
  if (std::isnan(phi) || phi <= 0.0) throw DomainError("scaled_stirling_pi: phi must be > 0");
  if (k > n) return ScaledFloat::zero();
  if (std::isinf(phi) || k == n) return ScaledFloat(1.0);
  const auto central = central_column(k, n);  // central[i] = S(k + i, k)
  const ScaledFloat inv_phi = ScaledFloat(1.0) / ScaledFloat(phi);
  ScaledFloat total(0.0);
  ScaledFloat coeff(1.0);  // (n-k)_i / (k+i)_i * phi^-i
  for (std::size_t i = 0; i <= n - k; ++i) {
    total += coeff * central[i];
    coeff = coeff * ScaledFloat(static_cast<double>(n - k - i)) / ScaledFloat(static_cast<double>(k + i + 1)) * inv_phi;
  }
  return total;
}

ExactReal scaled_stirling_pi_exact(std::size_t n, std::size_t k, const ExactReal& phi) {
  if (phi.sign() <= 0) throw DomainError("scaled_stirling_pi: phi must be > 0");
  if (k > n) return ExactReal(0);
  return stirling_noncentral_exact(n, k, phi) / (exact_binomial(n, k) * phi.pow(n - k));
}

ScaledFloat shift_noncentrality(std::size_t n, std::size_t k, double phi_to, const ScaledStirlingTable& table) {
  validate_phi(phi_to);
  const double phi_from = table.phi().to_double();
  if (phi_to < phi_from) {
    throw DomainError("shift_noncentrality: scaled backend requires phi_to >= phi_from");
  }
  return shift_impl<ScaledFloat>(n, k, ScaledFloat(phi_to - phi_from), table);
}

ExactReal shift_noncentrality(std::size_t n, std::size_t k, const ExactReal& phi_to, const ExactStirlingTable& table) {
  validate_phi(phi_to);
  return shift_impl<ExactReal>(n, k, phi_to - table.phi(), table);
}

std::shared_ptr<const ScaledStirlingTable> cached_scaled_table(double phi, std::size_t n_max, std::size_t k_max) {
  validate_phi(phi);
  static std::mutex mutex;
  static std::map<double, std::shared_ptr<const ScaledStirlingTable>> cache;
  k_max = std::min(k_max, n_max);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(phi); it != cache.end()) {
      const auto& t = *it->second;
      if (t.n_max() >= n_max && t.k_max() >= k_max) return it->second;
      n_max = std::max(n_max, t.n_max());
      k_max = std::max(k_max, t.k_max());
    }
  }
  auto built = std::make_shared<const ScaledStirlingTable>(n_max, k_max, ScaledFloat(phi));
  std::lock_guard lock(mutex);
  auto& slot = cache[phi];
  if (!slot || (slot->n_max() <= built->n_max() && slot->k_max() <= built->k_max())) slot = built;
  return built;
}

}  // namespace occkit
