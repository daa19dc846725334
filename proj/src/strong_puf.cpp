#include "pufguess/strong_puf.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "pufguess/parallel.hpp"

namespace pufguess {

namespace {

constexpr std::uint64_t kKeyStream = 11;
constexpr std::uint64_t kChallengeStream = 12;
constexpr std::uint64_t kFlipStream = 13;
constexpr std::uint64_t kNoiseStream = 14;

// Distinct positions by partial Fisher-Yates.
std::vector<std::size_t> choose_positions(std::size_t n, std::size_t k, RngStream& rng) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

template <typename Trial>
DistributionSummary run_trials(std::size_t trials, Trial trial) {
  std::vector<double> fhds(trials);
  parallel_for(trials, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) fhds[t] = trial(t);
  });
  return summarize(fhds);
}

}  // namespace

Sha256Digest hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message) {
  Sha256Digest tag{};
  unsigned int length = 0;
  static constexpr std::uint8_t kEmpty = 0;
  const std::uint8_t* key_ptr = key.empty() ? &kEmpty : key.data();
  const std::uint8_t* msg_ptr = message.empty() ? &kEmpty : message.data();
  if (HMAC(EVP_sha256(), key_ptr, static_cast<int>(key.size()), msg_ptr, message.size(), tag.data(), &length) ==
          nullptr ||
      length != tag.size()) {
    throw std::runtime_error("HMAC-SHA-256 computation failed");
  }
  return tag;
}

Challenge::Challenge(std::vector<std::uint8_t> payload) : payload_(std::move(payload)) {
  if (payload_.empty()) throw std::invalid_argument("challenge payload must be nonempty");
}

Challenge::Challenge(const BitVector& bits) : Challenge(bits.to_bytes()) {}

StrongPufDevice::StrongPufDevice(const BitVector& weak_response)
    : key_(weak_response), key_bytes_(weak_response.to_bytes()) {
  if (weak_response.size() != kKeyBits) {
    throw std::invalid_argument("strong PUF key must be exactly 512 bits, got " + std::to_string(weak_response.size()));
  }
}

BitVector StrongPufDevice::respond(const Challenge& challenge) const {
  const Sha256Digest tag = hmac_sha256(key_bytes_, challenge.payload());
  return BitVector::from_bytes(tag, kResponseBits);
}

Challenge random_challenge(std::size_t bits, Seed seed) {
  return Challenge(sample_response(PufSpec{bits, 0.5, 0.0, 0.5}, seed));
}

DistributionSummary avalanche_experiment(const StrongPufDevice& device, std::size_t bit_flips, std::size_t challenges,
                                         Seed seed) {
  if (bit_flips > StrongPufDevice::kKeyBits) throw std::invalid_argument("cannot flip more than 512 key bits");
  if (challenges == 0) throw std::invalid_argument("avalanche experiment needs at least one challenge");
  return run_trials(challenges, [&](std::size_t t) {
    RngStream rng(derive_seed(seed, kFlipStream, t));
    BitVector flipped_key = device.key();
    for (const std::size_t pos : choose_positions(StrongPufDevice::kKeyBits, bit_flips, rng)) flipped_key.flip(pos);
    const StrongPufDevice flipped(flipped_key);
    const Challenge c = random_challenge(StrongPufDevice::kDefaultChallengeBits, derive_seed(seed, kChallengeStream, t));
    return fhd(device.respond(c), flipped.respond(c));
  });
}

DistributionSummary noise_propagation(double weak_intra, std::size_t trials, Seed seed) {
  if (!(weak_intra >= 0.0 && weak_intra <= 0.5)) throw std::invalid_argument("weak intra-distance must lie in [0, 1/2]");
  if (trials == 0) throw std::invalid_argument("noise propagation needs at least one trial");
  const PufSpec key_spec{StrongPufDevice::kKeyBits, 0.5, 0.0, 0.5};
  return run_trials(trials, [&](std::size_t t) {
    const BitVector enrolled = sample_response(key_spec, derive_seed(seed, kKeyStream, t));
    const BitVector reread = resample(enrolled, weak_intra, derive_seed(seed, kNoiseStream, t));
    const Challenge c = random_challenge(StrongPufDevice::kDefaultChallengeBits, derive_seed(seed, kChallengeStream, t));
    return fhd(StrongPufDevice(enrolled).respond(c), StrongPufDevice(reread).respond(c));
  });
}

DistributionSummary strong_inter_fhd(const PufSpec& key_spec, std::size_t devices, Seed seed) {
  if (devices < 2) throw std::invalid_argument("strong inter-FHD needs at least two devices");
  PufSpec spec = key_spec;
  spec.length = StrongPufDevice::kKeyBits;
  spec.validate();
  const Challenge c = random_challenge(StrongPufDevice::kDefaultChallengeBits, derive_seed(seed, kChallengeStream));
  std::vector<BitVector> responses(devices, BitVector(StrongPufDevice::kResponseBits));
  parallel_for(devices, [&](std::size_t begin, std::size_t end) {
    for (std::size_t d = begin; d < end; ++d) {
      responses[d] = StrongPufDevice(sample_response(spec, derive_seed(seed, kKeyStream, d))).respond(c);
    }
  });
  return inter_fhd(responses);
}

}  // namespace pufguess
