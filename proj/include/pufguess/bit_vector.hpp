#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pufguess {

/// Fixed-length binary word. Responses, keys and challenges all travel as
/// BitVectors. The length is set at construction and never changes.
///
/// External encodings (hex, bytes, strings) are most-significant-bit first:
/// bit 0 is the leftmost character / the MSB of byte 0.
class BitVector {
 public:
  /// All-zero vector of `length` bits; throws std::invalid_argument on 0.
  explicit BitVector(std::size_t length);

  static BitVector from_string(std::string_view bits);
  static BitVector from_hex(std::string_view hex, std::size_t length);
  static BitVector from_bytes(std::span<const std::uint8_t> bytes, std::size_t length);

  std::size_t size() const noexcept { return length_; }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  std::size_t count_ones() const noexcept;

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector lhs, const BitVector& rhs) {
    lhs ^= rhs;
    return lhs;
  }
  friend bool operator==(const BitVector&, const BitVector&) = default;

  BitVector complement() const;

  std::string to_string() const;
  std::string to_hex() const;
  std::vector<std::uint8_t> to_bytes() const;

  /// Packed 64-bit words, bit i in word i/64 at position i%64. Padding bits
  /// past size() are always zero.
  std::span<const std::uint64_t> words() const noexcept { return words_; }

 private:
  void check_index(std::size_t i) const;
  void clear_padding() noexcept;

  std::size_t length_;
  std::vector<std::uint64_t> words_;
};

/// Number of differing positions; throws std::invalid_argument on length mismatch.
std::size_t hamming_distance(const BitVector& a, const BitVector& b);

}  // namespace pufguess
