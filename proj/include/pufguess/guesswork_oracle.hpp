#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pufguess/distribution.hpp"
#include "pufguess/guesswork_analytic.hpp"
#include "pufguess/rng.hpp"

namespace pufguess {

/// How a guessing strategy played out on an explicit source.
struct GuessRecord {
  std::vector<Word> strategy;  ///< guessed words, in order; distinct
  /// (word, guess number that first succeeds for it), for every word the
  /// strategy eventually hits. Counts start at 1.
  std::vector<std::pair<Word, std::uint64_t>> guess_counts;
  double failure_probability = 0.0;  ///< mass of words never hit
};

struct GuessOutcome {
  double moment;  ///< sum over hit words of G(x)^rho P(x)
  GuessRecord record;
};

/// Exhaustive words of length above this are refused by the ball oracles.
inline constexpr std::size_t kMaxOracleBits = 20;

/// Optimal guessing: support in descending probability, ties by ascending
/// word. Returns sum_i i^rho p_(i).
GuessOutcome exact_guesswork_moment(const DiscreteDistribution& dist, double rho);

/// sum_y E[G(X | Y = y)^rho] P(y) with the optimal order inside each y.
double conditional_guesswork_moment(const JointDistribution& joint, double rho);

/// Same quantity for a joint pmf given as a function over all (x, y) word
/// pairs, for joints too large to list explicitly.
double conditional_guesswork_moment(std::size_t x_bits, std::size_t y_bits,
                                    const std::function<double(Word, Word)>& joint, double rho);

/// Greedy distortion guessing on Bernoulli(p)^m: each guess is the word
/// whose Hamming ball of radius floor(mD) covers the most not-yet-covered
/// probability (ties to the lowest word). Achievable, so an upper bound on
/// the optimum.
GuessOutcome distortion_guesswork_greedy(double p, std::size_t m, double distortion, double rho);

struct FailureConstrainedOutcome {
  GuessOutcome outcome;
  double conditional_moment;             ///< E[G^rho | attack succeeds]
  std::vector<std::size_t> skipped_types;  ///< weights k (type k/m) never targeted
  double skipped_mass;                   ///< exact probability of the skipped types
};

/// Type skipping: with s set, types q >= s and low types q < p with
/// D(q||p) >= D(s||p) are not targeted; everything else is guessed by the
/// greedy ball strategy (descending probability when D = 0). Words of
/// skipped types that fall inside a guessed ball still count as hits.
/// nullopt skips nothing.
FailureConstrainedOutcome failure_constrained_guesswork(double p, std::size_t m, double distortion,
                                                        std::optional<double> skip_boundary, double rho);

/// Weights k whose type k/m is skipped for boundary s.
std::vector<std::size_t> skipped_types(double p, std::size_t m, double skip_boundary);

struct AuthGameStats {
  std::uint64_t trials = 0;
  double mean_guesswork = 0.0;      ///< failed trials count as 0 guesses
  std::vector<double> success_cdf;  ///< success_cdf[l-1] = Pr(G <= l)
  double failure_rate = 0.0;
};

/// Monte Carlo authentication game: the i-th guess is right with
/// probability 2^-H(i). Trial t draws from stream (seed, t).
AuthGameStats simulate_auth_game(std::span<const double> min_entropies, std::uint64_t trials, Seed seed);

struct MacGameStats {
  std::uint64_t trials = 0;
  double mean = 0.0;
  std::vector<std::uint64_t> histogram;  ///< histogram[g] = trials with total guesswork g

  /// Fraction of trials with G - eta > alpha eta.
  double deviation_frequency(double eta, double alpha) const;
};

inline constexpr unsigned kMaxMacMessageBits = 10;
inline constexpr unsigned kMaxMacTagBits = 10;

/// Monte Carlo MAC game over 2^N messages with L-bit tags. Identity mapping:
/// the key is 2^N L bits of Bernoulli(p) and message k's tag is the k-th
/// L-bit slice. Uniform mapping (p = 1/2 only): tags i.i.d. uniform. The
/// attacker guesses each tag in descending marginal probability.
MacGameStats simulate_mac_game(unsigned N, unsigned L, double p, MacMapping mapping, std::uint64_t trials, Seed seed);

}  // namespace pufguess
