#include "pufguess/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace pufguess {

namespace {

void require_reads(std::span<const BitVector> reads, const char* what) {
  if (reads.size() < 2) throw std::invalid_argument(std::string(what) + " needs at least two vectors");
}

std::vector<double> pairwise_fhd(std::span<const BitVector> vs) {
  std::vector<double> out;
  out.reserve(vs.size() * (vs.size() - 1) / 2);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) out.push_back(fhd(vs[i], vs[j]));
  }
  return out;
}

}  // namespace

DistributionSummary summarize(std::span<const double> values, std::size_t bins) {
  DistributionSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (const double v : values) sq += (v - s.mean) * (v - s.mean);
    s.std_dev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  if (bins > 0) {
    Histogram h{0.0, 1.0, std::vector<std::size_t>(bins, 0)};
    for (const double v : values) {
      const auto b = static_cast<std::size_t>(std::clamp(v, 0.0, 1.0) * static_cast<double>(bins));
      ++h.counts[std::min(b, bins - 1)];
    }
    s.histogram = std::move(h);
  }
  return s;
}

double fhd(const BitVector& a, const BitVector& b) {
  return static_cast<double>(hamming_distance(a, b)) / static_cast<double>(a.size());
}

DistributionSummary intra_fhd(std::span<const BitVector> reads, std::size_t bins) {
  require_reads(reads, "intra-FHD");
  return summarize(pairwise_fhd(reads), bins);
}

DistributionSummary inter_fhd(std::span<const BitVector> truths, std::size_t bins) {
  require_reads(truths, "inter-FHD");
  return summarize(pairwise_fhd(truths), bins);
}

double stability(std::span<const BitVector> reads) {
  require_reads(reads, "stability");
  // Positions that ever differ from the first read.
  const auto first = reads.front().words();
  std::vector<std::uint64_t> unstable(first.size(), 0);
  for (std::size_t r = 1; r < reads.size(); ++r) {
    if (reads[r].size() != reads.front().size()) throw std::invalid_argument("reads have differing lengths");
    const auto w = reads[r].words();
    for (std::size_t i = 0; i < w.size(); ++i) unstable[i] |= w[i] ^ first[i];
  }
  std::size_t flipped = 0;
  for (const auto u : unstable) flipped += static_cast<std::size_t>(std::popcount(u));
  return 1.0 - static_cast<double>(flipped) / static_cast<double>(reads.front().size());
}

BiasLevel bias_level(std::span<const BitVector> truths) {
  if (truths.empty()) throw std::invalid_argument("bias level needs at least one vector");
  std::size_t ones = 0;
  std::size_t total = 0;
  for (const auto& v : truths) {
    ones += v.count_ones();
    total += v.size();
  }
  const double f = static_cast<double>(ones) / static_cast<double>(total);
  return {f, static_cast<double>(total - ones) / static_cast<double>(total)};
}

TupleEntropy empirical_tuple_entropy(const BitVector& stream, std::size_t k) {
  if (k == 0) throw std::invalid_argument("tuple size must be positive");
  if (stream.size() < k) throw std::invalid_argument("stream is shorter than one tuple");
  if (k > 63) throw std::invalid_argument("tuple size above 63 bits is not supported");

  const std::size_t tuples = stream.size() / k;
  std::map<std::uint64_t, std::size_t> counts;
  std::size_t ones = 0;
  for (std::size_t t = 0; t < tuples; ++t) {
    std::uint64_t pattern = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const bool bit = stream.get(t * k + j);
      pattern = (pattern << 1) | (bit ? 1U : 0U);
      ones += bit ? 1 : 0;
    }
    ++counts[pattern];
  }

  const auto n = static_cast<double>(tuples);
  double h = 0.0;
  for (const auto& [pattern, c] : counts) {
    const double f = static_cast<double>(c) / n;
    h -= f * std::log2(f);
  }
  const double p_hat = static_cast<double>(ones) / static_cast<double>(tuples * k);
  return {std::max(h, 0.0), static_cast<double>(k) * binary_entropy(p_hat), tuples};
}

SecurityReport report_from_measurements(const MeasuredInputs& inputs, const GuessworkParams& params) {
  params.validate();
  if (!(inputs.ones_fraction >= 0.0 && inputs.ones_fraction <= 1.0)) {
    throw std::invalid_argument("ones fraction must lie in [0, 1]");
  }
  SecurityReport r;
  r.rho = params.rho;
  r.bias = {inputs.ones_fraction, 1.0 - inputs.ones_fraction};
  if (!inputs.intra_fhd) return r;

  const double noise = std::clamp(*inputs.intra_fhd, 0.0, 0.5);
  const double p = inputs.ones_fraction;
  r.stable = noise == 0.0;
  r.growth_rate = r.stable ? moment_growth_rate(p, params.rho) : params.rho * (1.0 - binary_entropy(noise));
  r.growth_rate_biased = distortion_growth_rate(p, noise, params.rho);
  r.min_entropy_rate = min_entropy_distortion_rate(std::min(p, 1.0 - p), noise);
  return r;
}

SecurityReport security_report(const Population& population, const GuessworkParams& params, std::size_t bins) {
  if (population.devices.empty()) throw std::invalid_argument("population has no devices");
  const std::vector<BitVector> truths = population.truths();
  const BiasLevel bias = bias_level(truths);

  const std::size_t reads = population.devices.front().reads.size();
  std::optional<DistributionSummary> intra;
  std::optional<double> stab;
  if (reads >= 2) {
    std::vector<double> pairs;
    double stab_sum = 0.0;
    for (const auto& d : population.devices) {
      if (d.reads.size() != reads) throw std::invalid_argument("devices have differing read counts");
      const std::vector<double> device_pairs = pairwise_fhd(d.reads);
      pairs.insert(pairs.end(), device_pairs.begin(), device_pairs.end());
      stab_sum += stability(d.reads);
    }
    intra = summarize(pairs, bins);
    stab = stab_sum / static_cast<double>(population.devices.size());
  }

  SecurityReport r = report_from_measurements({bias.ones, intra ? std::optional(intra->mean) : std::nullopt}, params);
  r.devices = population.devices.size();
  r.bits = population.spec.length;
  r.reads_per_device = reads;
  r.intra = intra;
  r.stability = stab;
  if (truths.size() >= 2) r.inter = inter_fhd(truths, bins);
  return r;
}

SecurityReport preset_report(const Preset& preset, const GuessworkParams& params) {
  preset.spec.validate();
  SecurityReport r = report_from_measurements({preset.spec.bias, preset.spec.noise}, params);
  r.bits = preset.spec.length;
  return r;
}

std::string growth_rate_pipeline_note() {
  return "growth_rate: stable -> rho*H_{1/(1+rho)}(p_hat); noisy -> rho*(1 - H(intra_fhd)) with bits treated as "
         "unbiased. growth_rate_biased: max(rho*H_{1/(1+rho)}(p_hat) - rho*H(intra_fhd), 0).";
}

}  // namespace pufguess
