#include "pufguess/bit_vector.hpp"

#include <bit>
#include <stdexcept>

namespace pufguess {

namespace {

constexpr std::size_t kWordBits = 64;

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitVector::BitVector(std::size_t length)
    : length_(length), words_((length + kWordBits - 1) / kWordBits, 0) {
  if (length == 0) throw std::invalid_argument("BitVector length must be positive");
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
  }
  return v;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t length) {
  if (hex.size() != (length + 3) / 4) {
    throw std::invalid_argument("hex string has " + std::to_string(hex.size()) +
                                " digits, expected " + std::to_string((length + 3) / 4) +
                                " for " + std::to_string(length) + " bits");
  }
  BitVector v(length);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const int nibble = hex_value(hex[d]);
    if (nibble < 0) throw std::invalid_argument("invalid hex digit in bit vector");
    for (int b = 0; b < 4; ++b) {
      const bool bit = (nibble >> (3 - b)) & 1;
      const std::size_t pos = d * 4 + static_cast<std::size_t>(b);
      if (pos < length) {
        v.set(pos, bit);
      } else if (bit) {
        throw std::invalid_argument("nonzero padding bits in hex bit vector");
      }
    }
  }
  return v;
}

BitVector BitVector::from_bytes(std::span<const std::uint8_t> bytes, std::size_t length) {
  if (bytes.size() * 8 < length) throw std::invalid_argument("not enough bytes for bit vector");
  BitVector v(length);
  for (std::size_t i = 0; i < length; ++i) {
    v.set(i, (bytes[i / 8] >> (7 - i % 8)) & 1);
  }
  return v;
}

void BitVector::check_index(std::size_t i) const {
  if (i >= length_) throw std::out_of_range("bit index out of range");
}

bool BitVector::get(std::size_t i) const {
  check_index(i);
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void BitVector::set(std::size_t i, bool value) {
  check_index(i);
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitVector::flip(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
}

std::size_t BitVector::count_ones() const noexcept {
  std::size_t n = 0;
  for (const auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.length_ != length_) throw std::invalid_argument("BitVector length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector BitVector::complement() const {
  BitVector out(*this);
  for (auto& w : out.words_) w = ~w;
  out.clear_padding();
  return out;
}

void BitVector::clear_padding() noexcept {
  const std::size_t tail = length_ % kWordBits;
  if (tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

std::string BitVector::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::string BitVector::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve((length_ + 3) / 4);
  for (std::size_t d = 0; d * 4 < length_; ++d) {
    int nibble = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t pos = d * 4 + b;
      nibble = (nibble << 1) | ((pos < length_ && get(pos)) ? 1 : 0);
    }
    s.push_back(kDigits[nibble]);
  }
  return s;
}

std::vector<std::uint8_t> BitVector::to_bytes() const {
  std::vector<std::uint8_t> out((length_ + 7) / 8, 0);
  for (std::size_t i = 0; i < length_; ++i) {
    if (get(i)) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming distance of vectors with different lengths (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t d = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) d += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  return d;
}

}  // namespace pufguess
