#include <memory>
#include <unordered_map>

#include "fslz/bitstream.hpp"
#include "fslz/codecs.hpp"
#include "fslz/phrase_dict.hpp"

namespace fslz {

namespace {

struct TrieNode {
  uint64_t id = 0;
  std::unordered_map<uint32_t, std::unique_ptr<TrieNode>> children;
};

}  // namespace

EncodeOutput lzw_encode(const SymbolSeq& input) {
  const uint32_t A = input.alphabet().size();
  const uint64_t n = input.size();
  BitWriter w;
  ParseResult parse;
  TrieNode root;
  for (uint32_t s = 0; s < A; ++s) {
    auto node = std::make_unique<TrieNode>();
    node->id = 1 + s;  // index 0 stays reserved
    root.children.emplace(s, std::move(node));
  }
  uint64_t created = 0;
  uint64_t pos = 0;
  std::span<const uint32_t> prev;
  while (pos < n) {
    if (!prev.empty()) {
      // the previous phrase extended by the upcoming symbol joins the
      // dictionary before this phrase is matched
      TrieNode* node = &root;
      for (uint32_t s : prev) node = node->children.at(s).get();
      auto child = std::make_unique<TrieNode>();
      child->id = A + 1 + created;
      node->children.emplace(input[pos], std::move(child));
      ++created;
    }
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
    w.put(match_id, bits_for_values(A + created));
    prev = input.view().subspan(pos, len);
    parse.codewords.push_back({match_id, std::nullopt});
    parse.phrases.push_back({{prev.begin(), prev.end()}, pos});
    pos += len;
  }
  Container c;
  c.algorithm = AlgorithmId::LZW;
  c.alphabet_size = A;
  c.original_length = n;
  c.payload = std::move(w).finish();
  return {std::move(c), std::move(parse)};
}

SymbolSeq lzw_decode(const Container& container) {
  if (container.algorithm != AlgorithmId::LZW) {
    throw UsageError("container does not hold an lzw stream");
  }
  Alphabet alphabet(container.alphabet_size);
  const uint32_t A = alphabet.size();
  const uint64_t n = container.original_length;
  BitReader r(container.payload);
  std::vector<std::vector<uint32_t>> created;  // index 0 -> id A+1
  std::vector<uint32_t> out;
  out.reserve(n);
  std::vector<uint32_t> prev;
  while (out.size() < n) {
    // ids known to the encoder at this step: singles, completed entries,
    // and (when a previous phrase exists) one entry whose final symbol is
    // still pending
    uint64_t pending = prev.empty() ? 0 : 1;
    uint64_t code = r.get(bits_for_values(A + created.size() + pending));
    if (code == 0 || code > A + created.size() + pending) {
      throw DecodeError("index out of range");
    }
    std::vector<uint32_t> cur;
    if (code <= A) {
      cur.push_back(static_cast<uint32_t>(code - 1));
    } else if (code <= A + created.size()) {
      cur = created[code - A - 1];
    } else {
      // the pending entry referenced itself: previous phrase plus its own
      // first symbol
      cur = prev;
      cur.push_back(prev[0]);
    }
    if (!prev.empty()) {
      std::vector<uint32_t> entry = prev;
      entry.push_back(cur[0]);
      created.push_back(std::move(entry));
    }
    if (cur.size() > n - out.size()) throw DecodeError("phrase exceeds declared length");
    out.insert(out.end(), cur.begin(), cur.end());
    prev = std::move(cur);
  }
  if (r.remaining() != 0) throw DecodeError("trailing payload bits");
  return SymbolSeq(alphabet, std::move(out));
}

EncodeOutput lzwlru_encode(const SymbolSeq& input, const LruParams& params) {
  if (params.max_len < 1) throw UsageError("max phrase length must be at least 1");
  const uint32_t A = input.alphabet().size();
  const uint64_t n = input.size();
  const uint32_t code_w = bits_for_values(A + params.capacity);
  BitWriter w;
  ParseResult parse;
  PhraseDictionary dict(params.capacity, params.max_len);
  for (uint32_t s = 0; s < A; ++s) {
    uint32_t sym = s;
    dict.insert_permanent(std::span<const uint32_t>(&sym, 1));
  }
  uint64_t pos = 0;
  std::span<const uint32_t> prev;
  while (pos < n) {
    if (!prev.empty()) {
      std::vector<uint32_t> entry(prev.begin(), prev.end());
      entry.push_back(input[pos]);
      if (entry.size() <= params.max_len) dict.insert_with_eviction(entry);
    }
    MatchRef m = dict.longest_active_match(input.view(pos));
    uint64_t code = m.kind == MatchRef::Kind::Permanent ? m.id : A + m.id;
    w.put(code, code_w);
    if (params.recency == RecencyMode::TouchOnMatch && m.kind == MatchRef::Kind::Slot) {
      dict.touch(m.id);
    }
    prev = input.view().subspan(pos, m.length);
    parse.codewords.push_back({code, std::nullopt});
    parse.phrases.push_back({{prev.begin(), prev.end()}, pos});
    pos += m.length;
  }
  Container c;
  c.algorithm = AlgorithmId::LZW_LRU;
  c.alphabet_size = A;
  c.original_length = n;
  c.params = {{ParamTag::D, params.capacity},
              {ParamTag::L_MAX, params.max_len},
              {ParamTag::RECENCY, static_cast<uint64_t>(params.recency)}};
  c.payload = std::move(w).finish();
  return {std::move(c), std::move(parse)};
}

SymbolSeq lzwlru_decode(const Container& container) {
  if (container.algorithm != AlgorithmId::LZW_LRU) {
    throw UsageError("container does not hold an lzw-lru stream");
  }
  Alphabet alphabet(container.alphabet_size);
  const uint32_t A = alphabet.size();
  const uint64_t capacity = container.param(ParamTag::D);
  const uint64_t max_len = container.param(ParamTag::L_MAX);
  const RecencyMode recency = [&] {
    uint64_t v = container.param(ParamTag::RECENCY);
    if (v > 1) throw FormatError("unknown recency mode");
    return static_cast<RecencyMode>(v);
  }();
  if (max_len < 1) throw FormatError("invalid dictionary parameters");
  const uint32_t code_w = bits_for_values(A + capacity);
  const uint64_t n = container.original_length;
  BitReader r(container.payload);
  LruSlots slots(capacity);
  std::vector<uint32_t> out;
  out.reserve(n);
  std::vector<uint32_t> prev;
  while (out.size() < n) {
    uint64_t pending_slot = 0;
    if (!prev.empty() && prev.size() + 1 <= max_len && capacity > 0) {
      // mirror the encoder's insertion; the entry's last symbol is not
      // known until this code is resolved
      std::vector<uint32_t> entry = prev;
      entry.push_back(0);
      if (slots.full()) slots.release(slots.lru_slot());
      pending_slot = slots.insert(std::move(entry));
    }
    uint64_t code = r.get(code_w);
    if (code == 0 || code > A + capacity) throw DecodeError("index out of range");
    std::vector<uint32_t> cur;
    uint64_t slot = 0;
    if (code <= A) {
      cur.push_back(static_cast<uint32_t>(code - 1));
    } else {
      slot = code - A;
      if (!slots.active(slot)) throw DecodeError("reference to inactive slot");
      if (slot == pending_slot) {
        cur = prev;
        cur.push_back(prev[0]);
      } else {
        auto stored = slots.phrase(slot);
        cur.assign(stored.begin(), stored.end());
      }
    }
    if (pending_slot != 0) slots.set_phrase_back(pending_slot, cur[0]);
    if (recency == RecencyMode::TouchOnMatch && slot != 0) slots.touch(slot);
    if (cur.size() > n - out.size()) throw DecodeError("phrase exceeds declared length");
    out.insert(out.end(), cur.begin(), cur.end());
    prev = std::move(cur);
  }
  if (r.remaining() != 0) throw DecodeError("trailing payload bits");
  return SymbolSeq(alphabet, std::move(out));
}

}  // namespace fslz
