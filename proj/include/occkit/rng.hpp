#pragma once

#include <cstdint>
#include <limits>

namespace occkit {

/// Seed for one random stream. Parallel work must take disjoint streams,
/// which `split` provides: split(i) for distinct i never share output.
class StreamSeed {
 public:
  constexpr explicit StreamSeed(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  constexpr std::uint64_t seed() const { return seed_; }
  constexpr std::uint64_t stream() const { return stream_; }

  /// Child stream `index` of this stream.
  constexpr StreamSeed split(std::uint64_t index) const {
    return StreamSeed(seed_, mix(stream_ ^ 0xA0761D6478BD642FULL) + index);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

/// Counter-based 64-bit generator: output i of stream (seed, stream) is a
/// fixed function of (seed, stream, i), so results are identical on every
/// platform and any draw can be regenerated without replaying the others.
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(StreamSeed seed)
      : key_(StreamSeed::mix(seed.seed() ^ StreamSeed::mix(seed.stream() + 0x6A09E667F3BCC909ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t c = counter_++;
    return StreamSeed::mix(key_ ^ StreamSeed::mix(c));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11U) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = (*this)();
    while (x >= limit) x = (*this)();
    return x % bound;
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace occkit
