#include "pufguess/guesswork_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <string>

#include "pufguess/parallel.hpp"

namespace pufguess {

namespace {

void require_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::domain_error("moment order rho must be positive");
}

double guess_weight(std::uint64_t index, double rho) {
  const auto i = static_cast<double>(index);
  return rho == 1.0 ? i : std::pow(i, rho);
}

// Descending probability, ascending word on ties.
bool guess_before(const std::pair<Word, double>& a, const std::pair<Word, double>& b) {
  if (a.second != b.second) return a.second > b.second;
  return a.first < b.first;
}

void require_oracle_bits(std::size_t m) {
  if (m == 0 || m > kMaxOracleBits) {
    throw std::invalid_argument("exhaustive oracle supports 1 <= m <= " + std::to_string(kMaxOracleBits) + ", got " +
                                std::to_string(m));
  }
}

std::vector<double> bernoulli_word_probabilities(double p, std::size_t m) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("Bernoulli parameter outside [0, 1]");
  std::vector<double> by_weight(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    by_weight[k] = std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(m - k));
  }
  std::vector<double> probs(std::size_t{1} << m);
  for (std::size_t w = 0; w < probs.size(); ++w) probs[w] = by_weight[static_cast<std::size_t>(std::popcount(w))];
  return probs;
}

// XOR masks of the Hamming ball, ordered by weight then value.
std::vector<Word> ball_masks(std::size_t m, std::size_t radius) {
  std::vector<Word> masks;
  for (Word w = 0; w < (Word{1} << m); ++w) {
    if (static_cast<std::size_t>(std::popcount(w)) <= radius) masks.push_back(w);
  }
  std::ranges::stable_sort(masks, [](Word a, Word b) { return std::popcount(a) < std::popcount(b); });
  return masks;
}

double type_probability(double p, std::size_t m, std::size_t k) {
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == m ? 1.0 : 0.0;
  const auto md = static_cast<double>(m);
  const auto kd = static_cast<double>(k);
  return std::exp(std::lgamma(md + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(md - kd + 1.0) + kd * std::log(p) +
                  (md - kd) * std::log1p(-p));
}

// Lazy greedy ball covering. `targeted` weights drive the choice of guesses;
// accounting (moment, failure) uses the full pmf.
GuessOutcome cover_greedy(std::size_t m, std::size_t radius, const std::vector<double>& probs,
                          const std::vector<char>& targeted, double rho) {
  const std::size_t n = probs.size();
  const std::vector<Word> masks = ball_masks(m, radius);
  std::vector<char> covered(n, 0);

  const auto gain_of = [&](Word c) {
    double g = 0.0;
    for (const Word mask : masks) {
      const Word x = c ^ mask;
      if (!covered[x] && targeted[x]) g += probs[x];
    }
    return g;
  };

  struct Candidate {
    double gain;
    Word word;
  };
  const auto lower_priority = [](const Candidate& a, const Candidate& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.word > b.word;
  };
  std::vector<Candidate> initial;
  initial.reserve(n);
  std::size_t remaining = 0;
  for (Word c = 0; c < n; ++c) {
    if (targeted[c] && probs[c] > 0.0) ++remaining;
    const double g = gain_of(c);
    if (g > 0.0) initial.push_back({g, c});
  }
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(lower_priority)> heap(lower_priority,
                                                                                      std::move(initial));

  GuessOutcome out{0.0, {}};
  std::uint64_t index = 0;
  while (remaining > 0 && !heap.empty()) {
    const Candidate top = heap.top();
    heap.pop();
    const double g = gain_of(top.word);
    if (g < top.gain) {
      if (g > 0.0) heap.push({g, top.word});
      continue;
    }
    ++index;
    out.record.strategy.push_back(top.word);
    const double weight = guess_weight(index, rho);
    for (const Word mask : masks) {
      const Word x = top.word ^ mask;
      if (covered[x]) continue;
      covered[x] = 1;
      if (probs[x] <= 0.0) continue;
      out.moment += weight * probs[x];
      out.record.guess_counts.emplace_back(x, index);
      if (targeted[x]) --remaining;
    }
  }
  // Sum the misses directly so a full cover reports exactly zero.
  double missed = 0.0;
  for (Word x = 0; x < n; ++x) {
    if (!covered[x]) missed += probs[x];
  }
  out.record.failure_probability = missed;
  return out;
}

}  // namespace

GuessOutcome exact_guesswork_moment(const DiscreteDistribution& dist, double rho) {
  require_rho(rho);
  std::vector<std::pair<Word, double>> order = dist.support();
  std::ranges::sort(order, guess_before);

  GuessOutcome out{0.0, {}};
  out.record.strategy.reserve(order.size());
  out.record.guess_counts.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.moment += guess_weight(i + 1, rho) * order[i].second;
    out.record.strategy.push_back(order[i].first);
    out.record.guess_counts.emplace_back(order[i].first, i + 1);
  }
  return out;
}

double conditional_guesswork_moment(const JointDistribution& joint, double rho) {
  require_rho(rho);
  double total = 0.0;
  for (auto& [y, xs] : joint.by_side_information()) {
    std::ranges::sort(xs, guess_before);
    for (std::size_t i = 0; i < xs.size(); ++i) total += guess_weight(i + 1, rho) * xs[i].second;
  }
  return total;
}

double conditional_guesswork_moment(std::size_t x_bits, std::size_t y_bits,
                                    const std::function<double(Word, Word)>& joint, double rho) {
  require_rho(rho);
  if (x_bits == 0 || y_bits == 0 || x_bits + y_bits > DiscreteDistribution::kMaxBits) {
    throw std::invalid_argument("joint support too large for exhaustive conditional guesswork");
  }
  const std::size_t nx = std::size_t{1} << x_bits;
  const std::size_t ny = std::size_t{1} << y_bits;
  std::vector<std::pair<Word, double>> column;
  column.reserve(nx);
  double moment = 0.0;
  double mass = 0.0;
  for (Word y = 0; y < ny; ++y) {
    column.clear();
    for (Word x = 0; x < nx; ++x) {
      const double prob = joint(x, y);
      if (!(prob >= 0.0)) throw std::invalid_argument("negative or NaN joint probability");
      if (prob > 0.0) column.emplace_back(x, prob);
    }
    std::ranges::sort(column, guess_before);
    for (std::size_t i = 0; i < column.size(); ++i) {
      moment += guess_weight(i + 1, rho) * column[i].second;
      mass += column[i].second;
    }
  }
  if (std::abs(mass - 1.0) > 1e-9) throw std::invalid_argument("joint probabilities do not sum to 1");
  return moment;
}

GuessOutcome distortion_guesswork_greedy(double p, std::size_t m, double distortion, double rho) {
  require_rho(rho);
  require_oracle_bits(m);
  const std::vector<double> probs = bernoulli_word_probabilities(p, m);
  const std::vector<char> all(probs.size(), 1);
  return cover_greedy(m, distortion_radius(m, distortion), probs, all, rho);
}

std::vector<std::size_t> skipped_types(double p, std::size_t m, double skip_boundary) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("type skipping needs p in (0, 1)");
  if (!(skip_boundary > p && skip_boundary <= 1.0)) throw std::domain_error("skip boundary s must lie in (p, 1]");
  constexpr double kTie = 1e-12;
  const double alpha = kl_divergence(skip_boundary, p);
  std::vector<std::size_t> skipped;
  for (std::size_t k = 0; k <= m; ++k) {
    const double q = static_cast<double>(k) / static_cast<double>(m);
    const bool high = q >= skip_boundary - kTie;
    const bool low = q < p && kl_divergence(q, p) >= alpha - kTie;
    if (high || low) skipped.push_back(k);
  }
  return skipped;
}

FailureConstrainedOutcome failure_constrained_guesswork(double p, std::size_t m, double distortion,
                                                        std::optional<double> skip_boundary, double rho) {
  require_rho(rho);
  require_oracle_bits(m);
  FailureConstrainedOutcome out{};
  std::vector<char> skip_weight(m + 1, 0);
  if (skip_boundary) {
    out.skipped_types = skipped_types(p, m, *skip_boundary);
    for (const std::size_t k : out.skipped_types) {
      skip_weight[k] = 1;
      out.skipped_mass += type_probability(p, m, k);
    }
  }

  const std::vector<double> probs = bernoulli_word_probabilities(p, m);
  std::vector<char> targeted(probs.size());
  for (std::size_t w = 0; w < probs.size(); ++w) {
    targeted[w] = skip_weight[static_cast<std::size_t>(std::popcount(w))] ? 0 : 1;
  }
  out.outcome = cover_greedy(m, distortion_radius(m, distortion), probs, targeted, rho);
  const double success = 1.0 - out.outcome.record.failure_probability;
  out.conditional_moment = success > 0.0 ? out.outcome.moment / success : 0.0;
  return out;
}

AuthGameStats simulate_auth_game(std::span<const double> min_entropies, std::uint64_t trials, Seed seed) {
  if (trials == 0) throw std::invalid_argument("authentication game needs at least one trial");
  const std::size_t n = min_entropies.size();
  std::vector<double> hit(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(min_entropies[i] >= 0.0)) throw std::domain_error("min-entropy must be non-negative");
    hit[i] = std::exp2(-min_entropies[i]);
  }

  std::uint64_t guess_sum = 0;
  std::vector<std::uint64_t> success_at(n, 0);
  std::mutex merge;
  parallel_for(trials, [&](std::size_t begin, std::size_t end) {
    std::uint64_t local_sum = 0;
    std::vector<std::uint64_t> local_hits(n, 0);
    for (std::size_t t = begin; t < end; ++t) {
      RngStream rng(derive_seed(seed, t));
      for (std::size_t i = 0; i < n; ++i) {
        if (rng.bernoulli(hit[i])) {
          local_sum += i + 1;
          ++local_hits[i];
          break;
        }
      }
    }
    std::lock_guard lock(merge);
    guess_sum += local_sum;
    for (std::size_t i = 0; i < n; ++i) success_at[i] += local_hits[i];
  });

  AuthGameStats stats;
  stats.trials = trials;
  const auto td = static_cast<double>(trials);
  stats.mean_guesswork = static_cast<double>(guess_sum) / td;
  std::uint64_t cumulative = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cumulative += success_at[i];
    stats.success_cdf.push_back(static_cast<double>(cumulative) / td);
  }
  stats.failure_rate = static_cast<double>(trials - cumulative) / td;
  return stats;
}

double MacGameStats::deviation_frequency(double eta, double alpha) const {
  if (trials == 0) return 0.0;
  std::uint64_t exceed = 0;
  // Totals are integers, so a threshold landing on one must not flip on rounding.
  const double threshold = eta + alpha * eta + 1e-9 * eta;
  for (std::size_t g = 0; g < histogram.size(); ++g) {
    if (static_cast<double>(g) > threshold) exceed += histogram[g];
  }
  return static_cast<double>(exceed) / static_cast<double>(trials);
}

MacGameStats simulate_mac_game(unsigned N, unsigned L, double p, MacMapping mapping, std::uint64_t trials,
                               Seed seed) {
  if (N > kMaxMacMessageBits || L == 0 || L > kMaxMacTagBits) {
    throw std::invalid_argument("MAC game supports N <= 10 and 1 <= L <= 10");
  }
  if (trials == 0) throw std::invalid_argument("MAC game needs at least one trial");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("key bias p must lie in (0, 1)");
  if (mapping == MacMapping::Uniform && p != 0.5) {
    throw std::domain_error("the uniform mapping is only defined for unbiased keys");
  }

  // rank[v] = position of tag v in the attacker's descending-probability order.
  const std::size_t tags = std::size_t{1} << L;
  std::vector<std::pair<Word, double>> order;
  for (Word v = 0; v < tags; ++v) {
    const auto ones = static_cast<double>(std::popcount(v));
    order.emplace_back(v, std::pow(p, ones) * std::pow(1.0 - p, static_cast<double>(L) - ones));
  }
  std::ranges::sort(order, guess_before);
  std::vector<std::uint64_t> rank(tags);
  for (std::size_t i = 0; i < tags; ++i) rank[order[i].first] = i + 1;

  const std::size_t messages = std::size_t{1} << N;
  MacGameStats stats;
  stats.trials = trials;
  stats.histogram.assign(messages * tags + 1, 0);
  std::mutex merge;
  parallel_for(trials, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> local(stats.histogram.size(), 0);
    for (std::size_t t = begin; t < end; ++t) {
      RngStream rng(derive_seed(seed, t));
      std::uint64_t total = 0;
      for (std::size_t k = 0; k < messages; ++k) {
        Word tag = 0;
        if (mapping == MacMapping::Uniform) {
          tag = rng.below(tags);
        } else {
          for (unsigned b = 0; b < L; ++b) tag = (tag << 1) | (rng.bernoulli(p) ? 1U : 0U);
        }
        total += rank[tag];
      }
      ++local[total];
    }
    std::lock_guard lock(merge);
    for (std::size_t g = 0; g < local.size(); ++g) stats.histogram[g] += local[g];
  });

  std::uint64_t sum = 0;
  for (std::size_t g = 0; g < stats.histogram.size(); ++g) sum += g * stats.histogram[g];
  stats.mean = static_cast<double>(sum) / static_cast<double>(trials);
  return stats;
}

}  // namespace pufguess
