#include <memory>
#include <unordered_map>

#include "fslz/bitstream.hpp"
#include "fslz/codecs.hpp"

namespace fslz {

namespace {

struct TrieNode {
  uint64_t id = 0;
  std::unordered_map<uint32_t, std::unique_ptr<TrieNode>> children;
};

}  // namespace

EncodeOutput lz78_encode(const SymbolSeq& input) {
  const uint32_t sym_w = input.alphabet().bits_per_symbol();
  const uint64_t n = input.size();
  BitWriter w;
  ParseResult parse;
  TrieNode root;
  uint64_t pos = 0;
  uint64_t next_id = 1;  // id of the phrase being parsed
  while (pos < n) {
    TrieNode* node = &root;
    uint64_t match_id = 0;
    uint64_t len = 0;
    while (pos + len < n) {
      auto it = node->children.find(input[pos + len]);
      if (it == node->children.end()) break;
      node = it->second.get();
      match_id = node->id;
      ++len;
    }
    w.put(match_id, ceil_log2(next_id));
    std::vector<uint32_t> phrase(input.view().begin() + pos,
                                 input.view().begin() + pos + len);
    std::optional<uint32_t> ext;
    if (pos + len < n) {
      ext = input[pos + len];
      w.put(*ext, sym_w);
      phrase.push_back(*ext);
      auto child = std::make_unique<TrieNode>();
      child->id = next_id;
      node->children.emplace(*ext, std::move(child));
    }
    parse.codewords.push_back({match_id, ext});
    uint64_t phrase_len = phrase.size();
    parse.phrases.push_back({std::move(phrase), pos});
    pos += phrase_len;
    ++next_id;
  }
  Container c;
  c.algorithm = AlgorithmId::LZ78;
  c.alphabet_size = input.alphabet().size();
  c.original_length = n;
  c.payload = std::move(w).finish();
  return {std::move(c), std::move(parse)};
}

SymbolSeq lz78_decode(const Container& container) {
  if (container.algorithm != AlgorithmId::LZ78) {
    throw UsageError("container does not hold an lz78 stream");
  }
  Alphabet alphabet(container.alphabet_size);
  const uint32_t sym_w = alphabet.bits_per_symbol();
  const uint64_t n = container.original_length;
  BitReader r(container.payload);
  std::vector<std::pair<uint64_t, uint64_t>> spans;  // phrase id -> (start, len)
  std::vector<uint32_t> out;
  out.reserve(n);
  uint64_t next_id = 1;
  while (out.size() < n) {
    uint64_t idx = r.get(ceil_log2(next_id));
    if (idx >= next_id) throw DecodeError("phrase index out of range");
    uint64_t base_len = idx == 0 ? 0 : spans[idx - 1].second;
    if (base_len > n - out.size()) throw DecodeError("phrase exceeds declared length");
    uint64_t start = out.size();
    if (idx != 0) {
      uint64_t src = spans[idx - 1].first;
      for (uint64_t i = 0; i < base_len; ++i) out.push_back(out[src + i]);
    }
    if (out.size() < n) {
      uint64_t ext = r.get(sym_w);
      if (ext >= alphabet.size()) throw DecodeError("extension symbol out of range");
      out.push_back(static_cast<uint32_t>(ext));
      spans.emplace_back(start, out.size() - start);
      ++next_id;
    }
    // else: final phrase without extension; nothing is added to the
    // dictionary and the loop terminates
  }
  if (r.remaining() != 0) throw DecodeError("trailing payload bits");
  return SymbolSeq(alphabet, std::move(out));
}

}  // namespace fslz
