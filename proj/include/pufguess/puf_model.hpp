#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pufguess/bit_vector.hpp"
#include "pufguess/rng.hpp"

namespace pufguess {

/// Generative parameters of a PUF family.
struct PufSpec {
  std::size_t length = 512;  ///< m, response bits
  double bias = 0.5;         ///< p, per-bit probability of a one
  double noise = 0.0;        ///< D, probability that a bit differs between two reads
  double cross_flip = 0.5;   ///< e, flip probability between correlated devices

  bool stable() const noexcept { return noise == 0.0; }

  /// Throws std::invalid_argument unless m >= 1, p in [0,1], D and e in [0,1/2].
  void validate() const;

  friend bool operator==(const PufSpec&, const PufSpec&) = default;
};

struct Preset {
  std::string name;
  PufSpec spec;
  std::string source;
};

/// LEDPUF, SRAM, RO20 and RO60, in that order.
const std::vector<Preset>& presets();

/// Case-insensitive lookup by name.
std::optional<Preset> find_preset(std::string_view name);

/// m i.i.d. Bernoulli(spec.bias) bits.
BitVector sample_response(const PufSpec& spec, Seed seed);

/// original XOR e with e i.i.d. Bernoulli(flip_probability).
BitVector resample(const BitVector& original, double flip_probability, Seed seed);

/// x ~ Bernoulli(p)^m and y = x XOR Bernoulli(e)^m.
std::pair<BitVector, BitVector> correlated_pair(const PufSpec& spec, Seed seed);

/// Per-read flip probability d relative to the latent response such that two
/// independent reads differ with probability 2d(1-d) = pairwise_noise.
double read_flip_probability(double pairwise_noise);

struct DeviceMeasurements {
  BitVector truth;
  std::vector<BitVector> reads;
};

struct Population {
  PufSpec spec;
  Seed seed;
  std::vector<DeviceMeasurements> devices;

  std::vector<BitVector> truths() const;
};

/// `devices` independent devices, each with a ground-truth response and
/// `resamples` noisy re-reads. Reads are drawn with read_flip_probability(D)
/// so that any two reads of one device differ at rate D.
Population sample_population(const PufSpec& spec, std::size_t devices, std::size_t resamples, Seed seed);

}  // namespace pufguess
