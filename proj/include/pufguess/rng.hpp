#pragma once

#include <cstdint>
#include <limits>

namespace pufguess {

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(Seed, Seed) = default;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child seed for a sub-stream identified by (a, b). Different (a, b) pairs
/// give unrelated streams; the mapping is fixed so results never depend on
/// the order in which streams are consumed.
constexpr Seed derive_seed(Seed parent, std::uint64_t a, std::uint64_t b = 0) noexcept {
  std::uint64_t k = mix64(parent.value + 0x9e3779b97f4a7c15ULL);
  k = mix64(k ^ (a * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
  k = mix64(k ^ (b * 0xaef17502108ef2d9ULL + 0x8cb92ba72f3d8dd7ULL));
  return Seed{k};
}

/// Counter-based generator: the n-th draw is a pure function of (key, n).
class CounterRng {
 public:
  explicit constexpr CounterRng(Seed seed) noexcept : key_(mix64(seed.value ^ 0x5851f42d4c957f2dULL)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// True with probability p; p <= 0 never fires, p >= 1 always does.
  constexpr bool bernoulli(std::uint64_t counter, double p) const noexcept { return uniform(counter) < p; }

 private:
  std::uint64_t key_;
};

/// Sequential view over a CounterRng, for algorithms that consume a variable
/// number of draws (rejection sampling, shuffles).
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit constexpr RngStream(Seed seed) noexcept : rng_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return rng_.bits(next_++); }
  double uniform() noexcept { return rng_.uniform(next_++); }
  bool bernoulli(double p) noexcept { return rng_.bernoulli(next_++, p); }

  /// Unbiased integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = (*this)();
    while (x >= limit) x = (*this)();
    return x % bound;
  }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

}  // namespace pufguess
