#include "fslz/bitstream.hpp"
#include "fslz/codecs.hpp"
#include "fslz/phrase_dict.hpp"

namespace fslz {

namespace {

RecencyMode recency_from_param(uint64_t v) {
  if (v > 1) throw FormatError("unknown recency mode");
  return static_cast<RecencyMode>(v);
}

void check_lru_params(const LruParams& p, uint64_t min_capacity) {
  if (p.capacity < min_capacity) throw UsageError("dictionary capacity too small");
  if (p.max_len < 1) throw UsageError("max phrase length must be at least 1");
}

}  // namespace

EncodeOutput lz78lru_encode(const SymbolSeq& input, const LruParams& params) {
  check_lru_params(params, 1);
  const uint32_t sym_w = input.alphabet().bits_per_symbol();
  const uint32_t slot_w = bits_for_values(params.capacity);  // 0 = no match
  const uint64_t n = input.size();
  BitWriter w;
  ParseResult parse;
  PhraseDictionary dict(params.capacity, params.max_len);
  uint64_t pos = 0;
  while (pos < n) {
    MatchRef m = dict.longest_active_match(input.view(pos));
    w.put(m.id, slot_w);
    uint64_t phrase_len = m.length;
    std::optional<uint32_t> ext;
    if (pos + m.length < n) {
      ext = input[pos + m.length];
      w.put(*ext, sym_w);
      ++phrase_len;
    }
    std::span<const uint32_t> phrase = input.view().subspan(pos, phrase_len);
    if (ext) {
      if (phrase_len <= params.max_len) {
        if (params.recency == RecencyMode::TouchOnMatch && m.id != 0) dict.touch(m.id);
        dict.insert_with_eviction(phrase);
      } else {
        ++parse.overlong_count;  // length max_len + 1: dictionary untouched
      }
    }
    parse.codewords.push_back({m.id, ext});
    parse.phrases.push_back({{phrase.begin(), phrase.end()}, pos});
    pos += phrase_len;
  }
  Container c;
  c.algorithm = AlgorithmId::LZ78_LRU;
  c.alphabet_size = input.alphabet().size();
  c.original_length = n;
  c.params = {{ParamTag::D, params.capacity},
              {ParamTag::L_MAX, params.max_len},
              {ParamTag::RECENCY, static_cast<uint64_t>(params.recency)}};
  c.payload = std::move(w).finish();
  return {std::move(c), std::move(parse)};
}

SymbolSeq lz78lru_decode(const Container& container) {
  if (container.algorithm != AlgorithmId::LZ78_LRU) {
    throw UsageError("container does not hold an lz78-lru stream");
  }
  Alphabet alphabet(container.alphabet_size);
  const uint64_t capacity = container.param(ParamTag::D);
  const uint64_t max_len = container.param(ParamTag::L_MAX);
  const RecencyMode recency = recency_from_param(container.param(ParamTag::RECENCY));
  if (capacity < 1 || max_len < 1) throw FormatError("invalid dictionary parameters");
  const uint32_t sym_w = alphabet.bits_per_symbol();
  const uint32_t slot_w = bits_for_values(capacity);
  const uint64_t n = container.original_length;
  BitReader r(container.payload);
  LruSlots slots(capacity);
  std::vector<uint32_t> out;
  out.reserve(n);
  while (out.size() < n) {
    uint64_t slot = r.get(slot_w);
    if (slot > capacity) throw DecodeError("slot out of range");
    std::vector<uint32_t> phrase;
    if (slot != 0) {
      if (!slots.active(slot)) throw DecodeError("reference to inactive slot");
      auto stored = slots.phrase(slot);
      phrase.assign(stored.begin(), stored.end());
    }
    if (phrase.size() > n - out.size()) throw DecodeError("phrase exceeds declared length");
    bool has_ext = !(slot != 0 && phrase.size() == n - out.size());
    if (has_ext) {
      uint64_t ext = r.get(sym_w);
      if (ext >= alphabet.size()) throw DecodeError("extension symbol out of range");
      phrase.push_back(static_cast<uint32_t>(ext));
    }
    out.insert(out.end(), phrase.begin(), phrase.end());
    if (has_ext && phrase.size() <= max_len) {
      if (recency == RecencyMode::TouchOnMatch && slot != 0) slots.touch(slot);
      if (slots.full()) slots.release(slots.lru_slot());
      slots.insert(std::move(phrase));
    }
  }
  if (r.remaining() != 0) throw DecodeError("trailing payload bits");
  return SymbolSeq(alphabet, std::move(out));
}

}  // namespace fslz
