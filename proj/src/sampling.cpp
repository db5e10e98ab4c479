#include "occkit/sampling.hpp"

#include <algorithm>
#include <stdexcept>

#include "occkit/negative_occupancy.hpp"
#include "occkit/occupancy.hpp"
#include "occkit/spillage.hpp"

namespace occkit {

namespace {

std::vector<double> uniforms(std::size_t count, StreamSeed seed) {
  CounterRng rng(seed);
  std::vector<double> u(count);
  for (double& x : u) x = rng.uniform();
  return u;
}

std::vector<std::int64_t> invert(const Pmf& pmf, const std::vector<double>& u) {
  std::vector<double> cumulative(pmf.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) cumulative[i] = acc += pmf.probabilities()[i];
  std::vector<std::int64_t> out;
  out.reserve(u.size());
  for (double x : u) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    if (it == cumulative.end()) {
      // Rounding can leave the last cumulative a hair below 1.
      if (pmf.meta().tail_mass == 0.0 && !cumulative.empty()) {
        out.push_back(pmf.support_max());
        continue;
      }
      throw std::out_of_range("sample_pmf: draw fell in the unstored tail");
    }
    out.push_back(pmf.support_min() + (it - cumulative.begin()));
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> sample_pmf(const Pmf& pmf, std::size_t count, StreamSeed seed) {
  return invert(pmf, uniforms(count, seed));
}

std::vector<std::int64_t> occ_sample(const OccParams& p, std::size_t count, StreamSeed seed) {
  if (count == 0) return {};
  return sample_pmf(occ_pmf(p), count, seed);
}

std::vector<std::int64_t> negocc_sample(const NegOccParams& p, std::size_t count, StreamSeed seed) {
  if (count == 0) return {};
  const auto u = uniforms(count, seed);
  const double top = *std::max_element(u.begin(), u.end());
  std::uint64_t t_max = 64;
  while (true) {
    const Pmf pmf = negocc_pmf(p, t_max);
    if (pmf.total() > top || pmf.meta().tail_mass == 0.0) return invert(pmf, u);
    t_max *= 2;
  }
}

std::vector<std::int64_t> spillage_sample(const SpillageParams& p, std::size_t count, StreamSeed seed) {
  if (count == 0) return {};
  return sample_pmf(spillage_pmf(p), count, seed);
}

}  // namespace occkit
