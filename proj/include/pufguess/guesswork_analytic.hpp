#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "pufguess/distribution.hpp"

namespace pufguess {

/// Analysis knobs shared by the growth-rate functions.
struct GuessworkParams {
  double rho = 1.0;         ///< moment order, > 0
  double distortion = 0.0;  ///< Hamming distortion fraction D in [0, 1/2]
  /// Skip-boundary type s in (p, 1]; nullopt means zero failure (alpha = inf).
  std::optional<double> skip_boundary;

  void validate() const;
};

struct RatePair {
  double lower;
  double upper;
};

// Entropies and divergences, all in bits. Binary quantities take the
// probability of a one; 0 log 0 = 0 throughout.

double binary_entropy(double q);

/// Renyi entropy of Bernoulli(p) of the given order (> 0, != 1).
double renyi_entropy(double p, double order);

/// D(s || p) between Bernoulli(s) and Bernoulli(p). Infinite divergences
/// (p at a point mass, s off it) throw std::domain_error.
double kl_divergence(double s, double p);

/// rho * H_{1/(1+rho)}(p): growth rate of E[G^rho] for an i.i.d. source.
double moment_growth_rate(double p, double rho);

/// max(rho H_{1/(1+rho)}(p) - rho H(D), 0): guessing up to distortion D,
/// which is also the rate of a noisy PUF with transition probability D.
double distortion_growth_rate(double p, double distortion, double rho);

/// The type maximizing rho H(q) - D(q || p).
double s_star(double p, double rho);

struct FailureConstrainedRate {
  double upper_bound_on_rate;  ///< exponent of E[G^rho] under the skip strategy
  double alpha;                ///< failure exponent D(s || p)
  bool unconstrained_branch;   ///< s >= s*, so skipping gains nothing
};

/// Rate when the attacker skips types at or beyond s (failure probability
/// ~ 2^{-m alpha}). Requires 0 <= D <= p <= 1/2 and p < s <= 1.
FailureConstrainedRate failure_constrained_rate(double p, double distortion, double rho, double s);

/// Exponent of the most likely Hamming-ball probability: D(D || p) for
/// D <= p, 0 above. Requires p <= 1/2.
double min_entropy_distortion_rate(double p, double distortion);

/// Arikan bounds on E[G*^rho]: upper = (sum p^{1/(1+rho)})^{1+rho} and
/// lower = upper / (1 + ln M)^rho. Absolute values, not rates.
RatePair arikan_bounds(const DiscreteDistribution& dist, double rho);
RatePair arikan_bounds(const JointDistribution& joint, double rho);

/// Hamming radius floor(m D) used for distortion D on m-bit words.
std::size_t distortion_radius(std::size_t m, double distortion);

/// Sum_{i=0}^{floor(mD)} C(m,i) p^i (1-p)^{m-i}, evaluated in log domain.
double ball_probability(double p, std::size_t m, double distortion);
/// log2 of ball_probability, accurate when the probability underflows.
double log2_ball_probability(double p, std::size_t m, double distortion);

// Authentication game: one guess per challenge, n challenges, attacker
// stops at the first correct guess. A failed attack contributes no guesses.

/// E(G) for per-challenge min-entropies H(1..n).
double auth_avg_guesswork(std::span<const double> min_entropies);
/// Same quantity for constant min-entropy, via the closed form
/// 2^H - (1 - 2^-H)^n (n + 2^H).
double auth_avg_guesswork_constant(double min_entropy, std::size_t n);
/// Pr(G <= l) for constant min-entropy: 1 - (1 - 2^-H)^l.
double auth_success_cdf(double min_entropy, std::size_t l);
/// Pr(G <= l) for per-challenge min-entropies (l <= n).
double auth_success_cdf(std::span<const double> min_entropies, std::size_t l);
/// Probability that every guess fails: prod (1 - 2^-H(i)).
double auth_failure_prob(std::span<const double> min_entropies);

struct GuessCount {
  std::uint64_t count;   ///< valid when !saturated
  bool saturated;        ///< count does not fit in 64 bits
  double log2_estimate;  ///< log2 of the real-valued count
};

/// Smallest l with auth_success_cdf(H, l) >= confidence.
GuessCount guesses_for_confidence(double min_entropy, double confidence);

/// Min-entropy of an m-bit response under a model attack that predicts
/// each bit with rate r; with D > 0 a guess inside the distortion ball wins.
double model_attack_min_entropy(double prediction_rate, std::size_t m, double distortion);

enum class MacMapping { Uniform, Identity };

struct MacGuesswork {
  double log2_value;
  bool exact;  ///< closed form is exact (uniform key) rather than a growth rate
};

/// Expected total guesses to learn the tags of all 2^N messages of an L-bit
/// MAC. Uniform keys (p = 1/2, any bijection): exact 2^N (2^L + 1)/2.
/// Biased keys with the identity mapping: 2^{N + L H_{1/2}(p)}.
MacGuesswork mac_avg_guesswork(unsigned N, unsigned L, double p, MacMapping mapping);

/// Azuma bound on Pr(G - eta > alpha eta), clamped to 1.
double mac_tail_bound(unsigned N, unsigned L, double p, double alpha, MacMapping mapping);

}  // namespace pufguess
