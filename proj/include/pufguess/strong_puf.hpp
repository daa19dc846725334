#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pufguess/bit_vector.hpp"
#include "pufguess/metrics.hpp"
#include "pufguess/puf_model.hpp"
#include "pufguess/rng.hpp"

namespace pufguess {

using Sha256Digest = std::array<std::uint8_t, 32>;

/// HMAC-SHA-256 (RFC 2104) for any key length.
Sha256Digest hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message);

/// Challenge payload; must be nonempty.
class Challenge {
 public:
  explicit Challenge(std::vector<std::uint8_t> payload);
  /// Packs bits MSB-first, zero-padding the last byte.
  explicit Challenge(const BitVector& bits);

  std::span<const std::uint8_t> payload() const noexcept { return payload_; }

 private:
  std::vector<std::uint8_t> payload_;
};

/// Strong PUF: the 512-bit weak response keys HMAC-SHA-256. 512 bits is one
/// SHA-256 block, so the key is used as-is with no hashing or padding.
class StrongPufDevice {
 public:
  static constexpr std::size_t kKeyBits = 512;
  static constexpr std::size_t kResponseBits = 256;
  static constexpr std::size_t kDefaultChallengeBits = 256;

  /// Throws std::invalid_argument unless the key has exactly 512 bits.
  explicit StrongPufDevice(const BitVector& weak_response);

  const BitVector& key() const noexcept { return key_; }

  BitVector respond(const Challenge& challenge) const;

 private:
  BitVector key_;
  std::vector<std::uint8_t> key_bytes_;
};

inline StrongPufDevice build_device(const BitVector& weak_response) { return StrongPufDevice(weak_response); }

/// Uniformly random challenge of `bits` bits from stream `seed`.
Challenge random_challenge(std::size_t bits, Seed seed);

/// Per trial: flip k distinct uniformly chosen key bits and compare the two
/// devices' responses to a fresh random challenge.
DistributionSummary avalanche_experiment(const StrongPufDevice& device, std::size_t bit_flips, std::size_t challenges,
                                         Seed seed);

/// Per trial: draw a random key, re-read it through a Bernoulli(d) flip
/// channel and compare the strong responses to a random challenge. Expected
/// mean is (1 - (1 - d)^512) / 2.
DistributionSummary noise_propagation(double weak_intra, std::size_t trials, Seed seed);

/// Inter-FHD of `devices` strong PUFs keyed from `key_spec` (length forced to
/// 512) answering one shared random challenge.
DistributionSummary strong_inter_fhd(const PufSpec& key_spec, std::size_t devices, Seed seed);

}  // namespace pufguess
