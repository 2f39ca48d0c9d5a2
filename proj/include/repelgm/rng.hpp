#pragma once

#include <cstdint>
#include <random>

namespace repelgm {

/// Deterministic random stream identified by (master seed, stream index).
/// The engine is seeded through std::seed_seq, whose mixing is fixed by the
/// standard, and all variates are derived from raw 64-bit words here so a
/// (seed, index) pair reproduces the same draws on every platform.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t index) : seed_(seed), index_(index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t index() const noexcept { return index_; }

  /// Independent child stream; children of distinct (seed, index, k) never collide
  /// with each other because the derived index mixes all three.
  RngStream child(std::uint64_t k) const { return RngStream(seed_, mix(index_, k)); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double prob) { return uniform() < prob; }

  /// Uniform integer in [0, bound) by rejection (bound > 0).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// splitmix64-style combination of two words.
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a * 0x9E3779B97F4A7C15ull ^ (b + 0x632BE59BD9B4E019ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::mt19937_64 engine_;
};

/// Fisher-Yates shuffle driven by RngStream (std::shuffle's draw pattern is
/// implementation-defined).
template <class It>
void shuffle(It first, It last, RngStream& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = rng.below(i);
    std::swap(first[i - 1], first[j]);
  }
}

} // namespace repelgm
