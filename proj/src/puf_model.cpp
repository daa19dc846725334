#include "pufguess/puf_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "pufguess/parallel.hpp"

namespace pufguess {

namespace {

// Stream tags keep the sub-streams of one seed apart.
constexpr std::uint64_t kTruthStream = 1;
constexpr std::uint64_t kReadStream = 2;
constexpr std::uint64_t kPairStream = 3;

void check_probability(double v, double hi, const char* what) {
  if (!(v >= 0.0 && v <= hi)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, " + std::to_string(hi) + "], got " +
                                std::to_string(v));
  }
}

BitVector bernoulli_vector(std::size_t length, double p, Seed seed) {
  BitVector v(length);
  const CounterRng rng(seed);
  for (std::size_t i = 0; i < length; ++i) {
    if (rng.bernoulli(i, p)) v.set(i, true);
  }
  return v;
}

}  // namespace

void PufSpec::validate() const {
  if (length == 0) throw std::invalid_argument("PUF length must be at least one bit");
  check_probability(bias, 1.0, "bias p");
  check_probability(noise, 0.5, "noise D");
  check_probability(cross_flip, 0.5, "correlation flip e");
}

const std::vector<Preset>& presets() {
  // Bias is the measured one-fraction, noise the measured intra-FHD.
  static const std::vector<Preset> kPresets = {
      {"LEDPUF", PufSpec{512, 0.4626, 0.0, 0.5}, "simulated DSA connection marginals; stable"},
      {"SRAM", PufSpec{512, 0.4913, 0.0226, 0.5}, "45nm SOI SRAM, 10 reads at 20C"},
      {"RO20", PufSpec{512, 0.5138, 0.0248, 0.5}, "FPGA ring oscillators, 10 reads at 20C"},
      {"RO60", PufSpec{512, 0.5138, 0.12, 0.5}, "FPGA ring oscillators, enrolled 20C, read 60C"},
  };
  return kPresets;
}

std::optional<Preset> find_preset(std::string_view name) {
  const auto lower = [](std::string_view s) {
    std::string out(s);
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
  };
  const std::string key = lower(name);
  for (const auto& preset : presets()) {
    if (lower(preset.name) == key) return preset;
  }
  return std::nullopt;
}

BitVector sample_response(const PufSpec& spec, Seed seed) {
  spec.validate();
  return bernoulli_vector(spec.length, spec.bias, seed);
}

BitVector resample(const BitVector& original, double flip_probability, Seed seed) {
  check_probability(flip_probability, 0.5, "resample flip probability D");
  if (flip_probability == 0.0) return original;
  return original ^ bernoulli_vector(original.size(), flip_probability, seed);
}

std::pair<BitVector, BitVector> correlated_pair(const PufSpec& spec, Seed seed) {
  spec.validate();
  BitVector x = sample_response(spec, derive_seed(seed, kPairStream, 0));
  BitVector y = x ^ bernoulli_vector(spec.length, spec.cross_flip, derive_seed(seed, kPairStream, 1));
  return {std::move(x), std::move(y)};
}

double read_flip_probability(double pairwise_noise) {
  check_probability(pairwise_noise, 0.5, "pairwise noise D");
  return 0.5 * (1.0 - std::sqrt(1.0 - 2.0 * pairwise_noise));
}

std::vector<BitVector> Population::truths() const {
  std::vector<BitVector> out;
  out.reserve(devices.size());
  for (const auto& d : devices) out.push_back(d.truth);
  return out;
}

Population sample_population(const PufSpec& spec, std::size_t devices, std::size_t resamples, Seed seed) {
  spec.validate();
  if (devices == 0) throw std::invalid_argument("population needs at least one device");
  if (resamples == 0) throw std::invalid_argument("population needs at least one read per device");

  const double read_flip = read_flip_probability(spec.noise);
  std::vector<std::optional<DeviceMeasurements>> slots(devices);
  parallel_for(devices, [&](std::size_t begin, std::size_t end) {
    for (std::size_t d = begin; d < end; ++d) {
      DeviceMeasurements dm{sample_response(spec, derive_seed(seed, kTruthStream, d)), {}};
      dm.reads.reserve(resamples);
      for (std::size_t r = 0; r < resamples; ++r) {
        dm.reads.push_back(resample(dm.truth, read_flip, derive_seed(derive_seed(seed, kReadStream, d), r)));
      }
      slots[d] = std::move(dm);
    }
  });

  Population pop{spec, seed, {}};
  pop.devices.reserve(devices);
  for (auto& slot : slots) pop.devices.push_back(std::move(*slot));
  return pop;
}

}  // namespace pufguess
