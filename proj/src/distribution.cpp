#include "pufguess/distribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace pufguess {

namespace {

constexpr double kNormalizationTolerance = 1e-9;

void check_bits(std::size_t m) {
  if (m == 0 || m > DiscreteDistribution::kMaxBits) {
    throw std::invalid_argument("word length must be in [1, " + std::to_string(DiscreteDistribution::kMaxBits) +
                                "], got " + std::to_string(m));
  }
}

void check_total(double total) {
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(total) + ", not 1");
  }
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::size_t m, const std::map<Word, double>& probabilities) : m_(m) {
  check_bits(m);
  for (const auto& [word, prob] : probabilities) {
    if (word >> m) throw std::invalid_argument("word does not fit in m bits");
    if (!(prob >= 0.0)) throw std::invalid_argument("negative or NaN probability");
    if (prob > 0.0) support_.emplace_back(word, prob);
  }
  finish();
}

DiscreteDistribution DiscreteDistribution::dense(std::size_t m, std::vector<double> probabilities) {
  check_bits(m);
  if (probabilities.size() != (std::size_t{1} << m)) throw std::invalid_argument("dense pmf must have 2^m entries");
  DiscreteDistribution d;
  d.m_ = m;
  for (std::size_t w = 0; w < probabilities.size(); ++w) {
    if (!(probabilities[w] >= 0.0)) throw std::invalid_argument("negative or NaN probability");
    if (probabilities[w] > 0.0) d.support_.emplace_back(w, probabilities[w]);
  }
  d.finish();
  return d;
}

DiscreteDistribution DiscreteDistribution::iid_bernoulli(double p, std::size_t m) {
  check_bits(m);
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("Bernoulli parameter outside [0,1]");
  // One value per type so equal-type words carry bit-identical probabilities.
  std::vector<double> by_weight(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    by_weight[k] = std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(m - k));
  }
  std::vector<double> probs(std::size_t{1} << m);
  for (std::size_t w = 0; w < probs.size(); ++w) probs[w] = by_weight[static_cast<std::size_t>(std::popcount(w))];
  return dense(m, std::move(probs));
}

void DiscreteDistribution::finish() {
  if (support_.empty()) throw std::invalid_argument("distribution has empty support");
  double total = 0.0;
  for (const auto& entry : support_) total += entry.second;
  check_total(total);
}

JointDistribution::JointDistribution(std::size_t x_bits, std::size_t y_bits, std::vector<Entry> entries)
    : x_bits_(x_bits), y_bits_(y_bits), entries_(std::move(entries)) {
  check_bits(x_bits);
  check_bits(y_bits);
  std::set<std::pair<Word, Word>> seen;
  double total = 0.0;
  for (const auto& e : entries_) {
    if ((e.x >> x_bits) || (e.y >> y_bits)) throw std::invalid_argument("joint entry does not fit the word lengths");
    if (!(e.probability >= 0.0)) throw std::invalid_argument("negative or NaN probability");
    if (!seen.emplace(e.x, e.y).second) throw std::invalid_argument("duplicate (x, y) entry");
    total += e.probability;
  }
  check_total(total);
}

std::map<Word, std::vector<std::pair<Word, double>>> JointDistribution::by_side_information() const {
  std::map<Word, std::vector<std::pair<Word, double>>> groups;
  for (const auto& e : entries_) {
    if (e.probability > 0.0) groups[e.y].emplace_back(e.x, e.probability);
  }
  for (auto& [y, xs] : groups) std::ranges::sort(xs);
  return groups;
}

std::size_t JointDistribution::x_cardinality() const {
  std::set<Word> xs;
  for (const auto& e : entries_) {
    if (e.probability > 0.0) xs.insert(e.x);
  }
  return xs.size();
}

}  // namespace pufguess
