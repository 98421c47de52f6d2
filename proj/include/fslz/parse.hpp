#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace fslz {

// One parsed phrase; symbols are indices in the codec's working alphabet
// (base symbols for the letter codecs, interned block ids for the
// block-alphabet pipeline).
struct Phrase {
  std::vector<uint32_t> symbols;
  uint64_t first_position = 0;
};

// Emitted reference for one phrase: dictionary slot / phrase index /
// window offset depending on codec, plus the extension symbol when the
// phrase carries one.
struct Codeword {
  uint64_t match_ref = 0;
  std::optional<uint32_t> extension;
};

// Ordered parse of one input; phrases concatenate to the input exactly.
struct ParseResult {
  std::vector<Phrase> phrases;
  std::vector<Codeword> codewords;
  uint64_t overlong_count = 0;  // phrases of length exactly max_len + 1

  uint64_t total_phrases() const { return phrases.size(); }
};

inline std::vector<uint32_t> concat_phrases(const ParseResult& parse) {
  std::vector<uint32_t> out;
  for (const Phrase& p : parse.phrases) {
    out.insert(out.end(), p.symbols.begin(), p.symbols.end());
  }
  return out;
}

}  // namespace fslz
