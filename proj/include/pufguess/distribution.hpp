#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace pufguess {

using Word = std::uint64_t;

/// Explicit pmf over binary words of length m. Oracle-scale only.
class DiscreteDistribution {
 public:
  static constexpr std::size_t kMaxBits = 24;

  /// Throws std::invalid_argument if m is out of range, a word does not fit
  /// in m bits, a probability is negative, or the total is not 1 within 1e-9.
  DiscreteDistribution(std::size_t m, const std::map<Word, double>& probabilities);

  /// Dense pmf indexed by word, size 2^m.
  static DiscreteDistribution dense(std::size_t m, std::vector<double> probabilities);

  /// Words of length m with i.i.d. Bernoulli(p) bits.
  static DiscreteDistribution iid_bernoulli(double p, std::size_t m);

  std::size_t bits() const noexcept { return m_; }

  /// Support entries (probability > 0) in ascending word order.
  const std::vector<std::pair<Word, double>>& support() const noexcept { return support_; }

 private:
  DiscreteDistribution() = default;
  void finish();

  std::size_t m_ = 0;
  std::vector<std::pair<Word, double>> support_;
};

/// Explicit joint pmf over (x, y) pairs.
class JointDistribution {
 public:
  struct Entry {
    Word x;
    Word y;
    double probability;
  };

  JointDistribution(std::size_t x_bits, std::size_t y_bits, std::vector<Entry> entries);

  std::size_t x_bits() const noexcept { return x_bits_; }
  std::size_t y_bits() const noexcept { return y_bits_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// Entries grouped by y (ascending), x ascending inside each group.
  std::map<Word, std::vector<std::pair<Word, double>>> by_side_information() const;

  /// Number of distinct x values with positive probability.
  std::size_t x_cardinality() const;

 private:
  std::size_t x_bits_;
  std::size_t y_bits_;
  std::vector<Entry> entries_;
};

}  // namespace pufguess
