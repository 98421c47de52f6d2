#include <algorithm>

#include "fslz/bitstream.hpp"
#include "fslz/codecs.hpp"

namespace fslz {

EncodeOutput lz77w_encode(const SymbolSeq& input, const LruParams& params) {
  if (params.capacity < 1) throw UsageError("dictionary capacity too small");
  if (params.max_len < 1) throw UsageError("max phrase length must be at least 1");
  const uint64_t window = params.capacity * params.max_len;
  const uint32_t off_w = bits_for_values(window);
  const uint32_t len_w = bits_for_values(params.max_len);
  const uint32_t sym_w = input.alphabet().bits_per_symbol();
  const uint64_t n = input.size();
  BitWriter w;
  ParseResult parse;
  // hash chains per leading symbol, most recent position first
  std::vector<int64_t> head(input.alphabet().size(), -1);
  std::vector<int64_t> link(n, -1);
  auto add_position = [&](uint64_t q) {
    link[q] = head[input[q]];
    head[input[q]] = static_cast<int64_t>(q);
  };
  uint64_t pos = 0;
  while (pos < n) {
    const uint64_t max_match = std::min<uint64_t>(params.max_len, n - pos);
    uint64_t best_len = 0, best_off = 0;
    for (int64_t cand = head[input[pos]]; cand >= 0; cand = link[cand]) {
      uint64_t off = pos - static_cast<uint64_t>(cand);
      if (off > window) break;  // chain is ordered newest first
      uint64_t len = 1;  // leading symbol matches by chain construction
      while (len < max_match && input[cand + len] == input[pos + len]) ++len;
      if (len > best_len) {  // strict: ties keep the smallest offset
        best_len = len;
        best_off = off;
        if (len == max_match) break;
      }
    }
    w.put(best_off, off_w);
    w.put(best_len, len_w);
    uint64_t phrase_len = best_len;
    std::optional<uint32_t> ext;
    if (pos + best_len < n) {
      ext = input[pos + best_len];
      w.put(*ext, sym_w);
      ++phrase_len;
    }
    if (phrase_len > params.max_len) ++parse.overlong_count;
    auto phrase = input.view().subspan(pos, phrase_len);
    parse.codewords.push_back({best_off, ext});
    parse.phrases.push_back({{phrase.begin(), phrase.end()}, pos});
    for (uint64_t q = pos; q < pos + phrase_len; ++q) add_position(q);
    pos += phrase_len;
  }
  Container c;
  c.algorithm = AlgorithmId::LZ77W;
  c.alphabet_size = input.alphabet().size();
  c.original_length = n;
  c.params = {{ParamTag::D, params.capacity},
              {ParamTag::L_MAX, params.max_len},
              {ParamTag::WINDOW, window}};
  c.payload = std::move(w).finish();
  return {std::move(c), std::move(parse)};
}

SymbolSeq lz77w_decode(const Container& container) {
  if (container.algorithm != AlgorithmId::LZ77W) {
    throw UsageError("container does not hold a windowed lz77 stream");
  }
  Alphabet alphabet(container.alphabet_size);
  const uint64_t capacity = container.param(ParamTag::D);
  const uint64_t max_len = container.param(ParamTag::L_MAX);
  const uint64_t window = container.param(ParamTag::WINDOW);
  if (capacity < 1 || max_len < 1 || window != capacity * max_len) {
    throw FormatError("invalid window parameters");
  }
  const uint32_t off_w = bits_for_values(window);
  const uint32_t len_w = bits_for_values(max_len);
  const uint32_t sym_w = alphabet.bits_per_symbol();
  const uint64_t n = container.original_length;
  BitReader r(container.payload);
  std::vector<uint32_t> out;
  out.reserve(n);
  while (out.size() < n) {
    uint64_t off = r.get(off_w);
    uint64_t len = r.get(len_w);
    if (off > window) throw DecodeError("offset out of range");
    if (len > max_len) throw DecodeError("match length out of range");
    if (off == 0 && len != 0) throw DecodeError("match length without offset");
    if (off > out.size()) throw DecodeError("offset exceeds current position");
    if (len > n - out.size()) throw DecodeError("phrase exceeds declared length");
    uint64_t start = out.size() - off;
    for (uint64_t i = 0; i < len; ++i) out.push_back(out[start + i]);  // may self-overlap
    if (out.size() < n) {
      uint64_t ext = r.get(sym_w);
      if (ext >= alphabet.size()) throw DecodeError("extension symbol out of range");
      out.push_back(static_cast<uint32_t>(ext));
    }
  }
  if (r.remaining() != 0) throw DecodeError("trailing payload bits");
  return SymbolSeq(alphabet, std::move(out));
}

}  // namespace fslz
