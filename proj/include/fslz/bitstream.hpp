#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fslz/types.hpp"

namespace fslz {

// Bit sequence with its exact length. Byte serialization pads the final
// byte with zero bits; bit_length is carried separately so padding is
// never decoded.
struct BitStream {
  std::vector<uint8_t> bytes;
  uint64_t bit_length = 0;

  bool operator==(const BitStream&) const = default;
};

// Appends fixed-width fields, MSB first within each byte.
class BitWriter {
 public:
  // Width may be 0 (writes nothing). value must fit in width bits.
  void put(uint64_t value, uint32_t width) {
    if (width == 0) return;
    if (width < 64 && (value >> width) != 0) throw UsageError("value does not fit bit width");
    for (uint32_t i = width; i-- > 0;) {
      put_bit((value >> i) & 1u);
    }
  }

  void put_bit(uint32_t bit) {
    if (bit_length_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<uint8_t>(1u << (7 - bit_length_ % 8));
    ++bit_length_;
  }

  uint64_t bit_length() const { return bit_length_; }

  BitStream finish() && { return BitStream{std::move(bytes_), bit_length_}; }

 private:
  std::vector<uint8_t> bytes_;
  uint64_t bit_length_ = 0;
};

// Reads fixed-width fields, MSB first. Reading past bit_length throws
// DecodeError so corrupt payloads surface as errors, not wild reads.
class BitReader {
 public:
  explicit BitReader(const BitStream& stream) : stream_(stream) {}

  uint64_t get(uint32_t width) {
    uint64_t value = 0;
    for (uint32_t i = 0; i < width; ++i) {
      value = (value << 1) | get_bit();
    }
    return value;
  }

  uint32_t get_bit() {
    if (pos_ >= stream_.bit_length) throw DecodeError("truncated payload");
    uint32_t bit = (stream_.bytes[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return bit;
  }

  uint64_t position() const { return pos_; }
  uint64_t remaining() const { return stream_.bit_length - pos_; }

 private:
  const BitStream& stream_;
  uint64_t pos_ = 0;
};

// Fixed-width packing: ceil(log2 A) bits per symbol, MSB first.
BitStream pack_symbols(const SymbolSeq& seq);
SymbolSeq unpack_symbols(const BitStream& bits, const Alphabet& alphabet, uint64_t n);

}  // namespace fslz
