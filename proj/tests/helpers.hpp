#pragma once

#include <random>
#include <string>
#include <vector>

#include "fslz/types.hpp"

namespace fslz::test {

// "abba" -> binary sequence 0,1,1,0; letters index the alphabet.
inline SymbolSeq letters(const std::string& text, uint32_t alphabet_size = 2) {
  std::vector<uint32_t> data;
  data.reserve(text.size());
  for (char ch : text) data.push_back(static_cast<uint32_t>(ch - 'a'));
  return SymbolSeq(Alphabet(alphabet_size), std::move(data));
}

inline SymbolSeq random_seq(std::mt19937_64& rng, uint32_t alphabet_size, uint64_t n) {
  std::vector<uint32_t> data(n);
  for (auto& s : data) s = static_cast<uint32_t>(rng() % alphabet_size);
  return SymbolSeq(Alphabet(alphabet_size), std::move(data));
}

inline std::string phrase_string(const std::vector<uint32_t>& symbols) {
  std::string out;
  for (uint32_t s : symbols) out += static_cast<char>('a' + s % 26);
  return out;
}

}  // namespace fslz::test
