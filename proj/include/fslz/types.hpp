#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "fslz/error.hpp"

namespace fslz {

// Smallest w such that 2^w >= v; ceil_log2(0) = ceil_log2(1) = 0.
inline uint32_t ceil_log2(uint64_t v) {
  if (v <= 1) return 0;
  return static_cast<uint32_t>(std::bit_width(v - 1));
}

// Bits needed for a field holding values 0..max_value inclusive.
inline uint32_t bits_for_values(uint64_t max_value) { return ceil_log2(max_value + 1); }

// Finite symbol set of size A, symbols identified with 0..A-1.
class Alphabet {
 public:
  explicit Alphabet(uint32_t size) : size_(size) {
    if (size < 2) throw UsageError("alphabet size must be at least 2");
  }

  uint32_t size() const { return size_; }
  uint32_t bits_per_symbol() const { return ceil_log2(size_); }

  bool operator==(const Alphabet&) const = default;

 private:
  uint32_t size_;
};

// Immutable sequence of symbol indices over a fixed alphabet.
class SymbolSeq {
 public:
  explicit SymbolSeq(Alphabet alphabet) : alphabet_(alphabet) {}

  SymbolSeq(Alphabet alphabet, std::vector<uint32_t> data)
      : alphabet_(alphabet), data_(std::move(data)) {
    for (uint32_t s : data_) {
      if (s >= alphabet_.size()) throw UsageError("symbol out of alphabet range");
    }
  }

  static SymbolSeq from_bytes(std::span<const uint8_t> bytes) {
    std::vector<uint32_t> data(bytes.begin(), bytes.end());
    return SymbolSeq(Alphabet(256), std::move(data));
  }

  // Reinterprets bytes as a binary sequence, MSB first within each byte.
  static SymbolSeq from_bits(std::span<const uint8_t> bytes, uint64_t bit_count) {
    if (bit_count > bytes.size() * 8ull) throw UsageError("bit count exceeds input size");
    std::vector<uint32_t> data;
    data.reserve(bit_count);
    for (uint64_t i = 0; i < bit_count; ++i) {
      data.push_back((bytes[i / 8] >> (7 - i % 8)) & 1u);
    }
    return SymbolSeq(Alphabet(2), std::move(data));
  }

  const Alphabet& alphabet() const { return alphabet_; }
  uint64_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  uint32_t operator[](uint64_t i) const { return data_[i]; }
  std::span<const uint32_t> view() const { return data_; }
  std::span<const uint32_t> view(uint64_t from) const {
    return std::span<const uint32_t>(data_).subspan(from);
  }
  const std::vector<uint32_t>& data() const { return data_; }

  bool operator==(const SymbolSeq&) const = default;

 private:
  Alphabet alphabet_;
  std::vector<uint32_t> data_;
};

// Exact non-negative rational, normalized, den > 0. Used for distortion
// thresholds so budget comparisons never go through floating point.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  Rational() = default;
  Rational(int64_t n, int64_t d) : num(n), den(d) {
    if (den <= 0) throw UsageError("rational denominator must be positive");
    if (num < 0) throw UsageError("rational must be non-negative");
    int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rational from_int(int64_t v) { return Rational(v, 1); }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <= static_cast<__int128>(b.num) * a.den;
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(int64_t k, const Rational& r) { return Rational(k * r.num, r.den); }
};

// Parses "3", "1/4" or "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace fslz
