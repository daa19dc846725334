#include <stdexcept>

#include "doctest.h"
#include "pufguess/bit_vector.hpp"

using pufguess::BitVector;

TEST_CASE("round trip through bit strings, hex and bytes") {
  const BitVector v = BitVector::from_string("1011000111");
  CHECK(v.size() == 10);
  CHECK(v.to_string() == "1011000111");
  CHECK(v.count_ones() == 6);
  // MSB-first hex, right-padded with zeros: 1011 0001 11(00)
  CHECK(v.to_hex() == "b1c");
  CHECK(BitVector::from_hex("b1c", 10) == v);
  CHECK(BitVector::from_bytes(v.to_bytes(), 10) == v);
}

TEST_CASE("hex parsing rejects bad input") {
  CHECK_THROWS_AS(BitVector::from_hex("b1d", 10), std::invalid_argument);  // nonzero padding
  CHECK_THROWS_AS(BitVector::from_hex("b1", 10), std::invalid_argument);
  CHECK_THROWS_AS(BitVector::from_hex("zz", 8), std::invalid_argument);
  CHECK(BitVector::from_hex("FF", 8).count_ones() == 8);
}

TEST_CASE("length is fixed and positive") {
  CHECK_THROWS(BitVector(0));
  BitVector v(130);
  v.set(129, true);
  v.flip(0);
  CHECK(v.count_ones() == 2);
  CHECK_THROWS(v.get(130));
  CHECK_THROWS(BitVector(3) ^ BitVector(4));
}

TEST_CASE("complement and xor keep padding clean") {
  const BitVector v = BitVector::from_string("00001111");
  const BitVector c = v.complement();
  CHECK(c.to_string() == "11110000");
  CHECK((v ^ c).count_ones() == 8);
  BitVector odd(65);
  CHECK(odd.complement().count_ones() == 65);
  CHECK(odd.complement().words()[1] == 1);
}

TEST_CASE("hamming distance") {
  const BitVector a = BitVector::from_string("00001111");
  const BitVector b = BitVector::from_string("00000000");
  CHECK(pufguess::hamming_distance(a, b) == 4);
  CHECK(pufguess::hamming_distance(a, a) == 0);
  CHECK_THROWS(pufguess::hamming_distance(a, BitVector(9)));
}
