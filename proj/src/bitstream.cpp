#include "fslz/bitstream.hpp"

namespace fslz {

BitStream pack_symbols(const SymbolSeq& seq) {
  const uint32_t width = seq.alphabet().bits_per_symbol();
  BitWriter writer;
  for (uint64_t i = 0; i < seq.size(); ++i) {
    writer.put(seq[i], width);
  }
  return std::move(writer).finish();
}

SymbolSeq unpack_symbols(const BitStream& bits, const Alphabet& alphabet, uint64_t n) {
  const uint32_t width = alphabet.bits_per_symbol();
  if (bits.bit_length != n * width) {
    throw UsageError("bit length does not match symbol count for this alphabet");
  }
  BitReader reader(bits);
  std::vector<uint32_t> data;
  data.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    uint64_t v = reader.get(width);
    if (v >= alphabet.size()) throw DecodeError("packed symbol out of alphabet range");
    data.push_back(static_cast<uint32_t>(v));
  }
  return SymbolSeq(alphabet, std::move(data));
}

namespace {

int64_t parse_int_strict(const std::string& text) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("malformed number: " + text);
  }
  if (pos != text.size()) throw UsageError("malformed number: " + text);
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw UsageError("empty rational");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    int64_t num = parse_int_strict(text.substr(0, slash));
    int64_t den = parse_int_strict(text.substr(slash + 1));
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string frac = text.substr(dot + 1);
    if (frac.size() > 18) throw UsageError("decimal rational too precise");
    int64_t whole = dot == 0 ? 0 : parse_int_strict(text.substr(0, dot));
    int64_t den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    int64_t num = frac.empty() ? 0 : parse_int_strict(frac);
    return Rational(whole * den + num, den);
  }
  return Rational(parse_int_strict(text), 1);
}

}  // namespace fslz
