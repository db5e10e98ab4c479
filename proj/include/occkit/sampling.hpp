#pragma once

#include <cstdint>
#include <vector>

#include "occkit/params.hpp"
#include "occkit/pmf.hpp"
#include "occkit/rng.hpp"

namespace occkit {

/// Inverse-CDF draws from the stored mass of `pmf`. Draws that land in the
/// tail mass throw std::out_of_range; use a pmf whose tail is negligible.
std::vector<std::int64_t> sample_pmf(const Pmf& pmf, std::size_t count, StreamSeed seed);

std::vector<std::int64_t> occ_sample(const OccParams& p, std::size_t count, StreamSeed seed);
/// Extends the truncation until every drawn uniform falls inside the stored mass.
std::vector<std::int64_t> negocc_sample(const NegOccParams& p, std::size_t count, StreamSeed seed);
std::vector<std::int64_t> spillage_sample(const SpillageParams& p, std::size_t count, StreamSeed seed);

}  // namespace occkit
