#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pufguess/bit_vector.hpp"
#include "pufguess/guesswork_analytic.hpp"
#include "pufguess/puf_model.hpp"

namespace pufguess {

struct Histogram {
  double lower = 0.0;
  double upper = 1.0;
  std::vector<std::size_t> counts;  ///< equal-width bins over [lower, upper]
};

struct DistributionSummary {
  double mean = 0.0;
  double std_dev = 0.0;  ///< sample standard deviation (n - 1), 0 for n = 1
  std::size_t count = 0;
  std::optional<Histogram> histogram;
};

/// Summary of values in [0, 1]; with bins > 0 a histogram over [0, 1] is attached.
DistributionSummary summarize(std::span<const double> values, std::size_t bins = 0);

/// Fractional Hamming distance.
double fhd(const BitVector& a, const BitVector& b);

/// FHD over all unordered pairs of reads of one device. Needs >= 2 reads.
DistributionSummary intra_fhd(std::span<const BitVector> reads, std::size_t bins = 0);

/// FHD over all unordered pairs of device responses. Needs >= 2 devices.
DistributionSummary inter_fhd(std::span<const BitVector> truths, std::size_t bins = 0);

/// Fraction of positions identical across every read. Needs >= 2 reads.
double stability(std::span<const BitVector> reads);

struct BiasLevel {
  double ones;
  double zeros;
};

/// Pooled one/zero fractions over all vectors.
BiasLevel bias_level(std::span<const BitVector> truths);

struct TupleEntropy {
  double entropy_bits;       ///< Shannon entropy of the empirical k-tuple distribution
  double independence_bits;  ///< k H(p_hat), p_hat the one-fraction of the tupled bits
  std::size_t tuples;
};

/// Non-overlapping k-tuples in stream order; trailing bits that do not fill a
/// tuple are ignored. Throws if the stream is shorter than k.
TupleEntropy empirical_tuple_entropy(const BitVector& stream, std::size_t k);

/// Measured population statistics that feed the growth-rate pipeline.
struct MeasuredInputs {
  double ones_fraction;
  std::optional<double> intra_fhd;  ///< absent when there are < 2 reads per device
};

struct SecurityReport {
  std::size_t devices = 0;
  std::size_t bits = 0;
  std::size_t reads_per_device = 0;
  BiasLevel bias{0.0, 0.0};
  std::optional<DistributionSummary> intra;
  std::optional<DistributionSummary> inter;
  std::optional<double> stability;
  double rho = 1.0;
  bool stable = false;
  /// Tabulated pipeline: stable -> rho H_{1/(1+rho)}(p_hat); noisy ->
  /// rho (1 - H(D_hat)), i.e. the bits are treated as unbiased.
  std::optional<double> growth_rate;
  /// Bias-aware variant: max(rho H_{1/(1+rho)}(p_hat) - rho H(D_hat), 0).
  std::optional<double> growth_rate_biased;
  /// Per-bit min-entropy under distortion D_hat, on min(p_hat, 1 - p_hat).
  std::optional<double> min_entropy_rate;
};

/// Growth rates from measured inputs only.
SecurityReport report_from_measurements(const MeasuredInputs& inputs, const GuessworkParams& params);

/// Bias, intra-FHD, inter-FHD and stability of a population, then the
/// growth rates via report_from_measurements. Intra-FHD and stability
/// average over devices; inter-FHD compares ground truths.
SecurityReport security_report(const Population& population, const GuessworkParams& params, std::size_t bins = 0);

/// Growth rates computed from a preset's constants (its bias and noise).
SecurityReport preset_report(const Preset& preset, const GuessworkParams& params);

/// Short description of how growth_rate is derived.
std::string growth_rate_pipeline_note();

}  // namespace pufguess
