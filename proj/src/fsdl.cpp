#include "fslz/fsdl.hpp"

#include <cmath>
#include <map>

#include "fslz/bitstream.hpp"
#include "fslz/phrase_dict.hpp"

namespace fslz {

BoundValue fsld_lower_bound(const std::vector<std::vector<uint32_t>>& blocks,
                            const BoundParams& bp, uint32_t alphabet_size,
                            BlockEntropyReading reading) {
  if (blocks.empty()) throw UsageError("empty block list");
  if (bp.s < 1) throw UsageError("state count must be at least 1");
  const uint64_t L = blocks.front().size();
  for (const auto& b : blocks) {
    if (b.size() != L) throw UsageError("blocks must share one length");
  }
  std::map<std::vector<uint32_t>, uint64_t> counts;
  for (const auto& b : blocks) ++counts[b];
  const double c = static_cast<double>(blocks.size());
  double sum = 0.0;
  for (const auto& [value, count] : counts) {
    double p = static_cast<double>(count) / c;
    double term = p * std::log2(1.0 / p);
    sum += reading == BlockEntropyReading::DistinctValues
               ? term
               : static_cast<double>(count) * term;
  }
  const double log_a = std::log2(static_cast<double>(alphabet_size));
  const double n = c * static_cast<double>(L);
  double value = (static_cast<double>(L) / (n * log_a)) * sum -
                 2.0 * std::log2(static_cast<double>(bp.s)) /
                     (static_cast<double>(L) * log_a);
  double slack = 1.0 / (static_cast<double>(L) * log_a);
  return {value, slack};
}

uint64_t coupled_capacity(uint64_t block_len) {
  uint64_t exponent = block_len * block_len * block_len;
  if (exponent > 62) throw UsageError("coupled capacity exceeds 64-bit range");
  return 1ull << exponent;
}

uint64_t coupled_min_window(uint64_t capacity) {
  return capacity * ceil_log2(capacity);
}

FsdlResult fsdl_encode(const SymbolSeq& input, const QuantizerConfig& cfg,
                       const LruParams& params) {
  if (params.capacity < 1) throw UsageError("dictionary capacity too small");
  if (params.max_len < 1) throw UsageError("max phrase length must be at least 1");
  const uint64_t L = cfg.block_len;
  const uint32_t A = input.alphabet().size();
  const uint32_t sym_w = input.alphabet().bits_per_symbol();
  const uint64_t n = input.size();
  const uint64_t n_blocks = n / L;

  SymbolSeq prefix(input.alphabet(),
                   std::vector<uint32_t>(input.view().begin(),
                                         input.view().begin() + n_blocks * L));
  QuantizeResult quant = greedy_quantize(prefix, cfg);
  const std::vector<uint64_t>& ids = quant.codebook.assignments;

  const uint32_t slot_w = bits_for_values(params.capacity);
  BitWriter w;
  ParseResult parse;
  PhraseDictionary dict(params.capacity, params.max_len);
  std::vector<uint32_t> id_seq(ids.begin(), ids.end());  // one super-symbol per block
  std::span<const uint32_t> id_view(id_seq);
  uint64_t pos = 0;
  auto write_block = [&](uint64_t id) {
    for (uint32_t s : quant.codebook.centers[id]) w.put(s, sym_w);
  };
  while (pos < n_blocks) {
    MatchRef m = dict.longest_active_match(id_view.subspan(pos));
    w.put(m.id, slot_w);
    uint64_t phrase_len = m.length;
    std::optional<uint32_t> ext;
    if (pos + m.length < n_blocks) {
      ext = id_seq[pos + m.length];
      write_block(*ext);
      ++phrase_len;
    }
    std::vector<uint32_t> phrase(id_view.begin() + pos, id_view.begin() + pos + phrase_len);
    if (ext) {
      if (phrase_len <= params.max_len) {
        if (params.recency == RecencyMode::TouchOnMatch && m.id != 0) dict.touch(m.id);
        dict.insert_with_eviction(phrase);
      } else {
        ++parse.overlong_count;
      }
    }
    parse.codewords.push_back({m.id, ext});
    parse.phrases.push_back({std::move(phrase), pos});
    pos += phrase_len;
  }
  for (uint64_t i = n_blocks * L; i < n; ++i) w.put(input[i], sym_w);

  std::vector<uint32_t> quantized_full(quant.quantized.view().begin(),
                                       quant.quantized.view().end());
  for (uint64_t i = n_blocks * L; i < n; ++i) quantized_full.push_back(input[i]);

  Container c;
  c.algorithm = AlgorithmId::FSDL;
  c.alphabet_size = A;
  c.original_length = n;
  c.params = {{ParamTag::D, params.capacity},
              {ParamTag::L_MAX, params.max_len},
              {ParamTag::L, L},
              {ParamTag::D_MAX_NUM, static_cast<uint64_t>(cfg.budget.num)},
              {ParamTag::D_MAX_DEN, static_cast<uint64_t>(cfg.budget.den)},
              {ParamTag::RECENCY, static_cast<uint64_t>(params.recency)}};
  c.payload = std::move(w).finish();

  CompressionReport report;
  report.algorithm = algorithm_name(AlgorithmId::FSDL);
  report.n = n;
  report.c = parse.phrases.size();
  report.overlong = parse.overlong_count;
  report.payload_bits = c.payload.bit_length;
  report.params = {{"D", std::to_string(params.capacity)},
                   {"L_max", std::to_string(params.max_len)},
                   {"L", std::to_string(L)},
                   {"d_max", cfg.budget.to_string()},
                   {"recency", std::to_string(static_cast<uint64_t>(params.recency))}};
  if (n > 0) {
    const double log_a = std::log2(static_cast<double>(A));
    report.actual_ratio = static_cast<double>(report.payload_bits) /
                          (static_cast<double>(n) * log_a);
    report.nominal_ratio =
        nominal_ratio_for(AlgorithmId::FSDL, report.c, n, A, c.params);
    if (!parse.phrases.empty()) {
      report.k = phrase_stats(parse, A).k;
    }
    if (n_blocks > 0) {
      std::vector<std::vector<uint32_t>> blocks;
      blocks.reserve(n_blocks);
      for (uint64_t i = 0; i < n_blocks; ++i) {
        blocks.push_back(quant.codebook.centers[ids[i]]);
      }
      BoundValue b = fsld_lower_bound(blocks, {1}, A);
      report.bounds.emplace_back(1, b.value);
      report.bound_slack = b.slack;
    }
  }
  return {std::move(c), std::move(report), std::move(quant.codebook),
          SymbolSeq(input.alphabet(), std::move(quantized_full)), std::move(parse)};
}

SymbolSeq fsdl_decode(const Container& container) {
  if (container.algorithm != AlgorithmId::FSDL) {
    throw UsageError("container does not hold a pipeline stream");
  }
  Alphabet alphabet(container.alphabet_size);
  const uint64_t capacity = container.param(ParamTag::D);
  const uint64_t max_len = container.param(ParamTag::L_MAX);
  const uint64_t L = container.param(ParamTag::L);
  const uint64_t recency_raw = container.param(ParamTag::RECENCY);
  if (capacity < 1 || max_len < 1 || L < 1) {
    throw FormatError("invalid dictionary parameters");
  }
  if (recency_raw > 1) throw FormatError("unknown recency mode");
  const RecencyMode recency = static_cast<RecencyMode>(recency_raw);
  const uint32_t sym_w = alphabet.bits_per_symbol();
  const uint32_t slot_w = bits_for_values(capacity);
  const uint64_t n = container.original_length;
  const uint64_t n_blocks = n / L;
  const uint64_t tail_len = n % L;
  BitReader r(container.payload);
  LruSlots slots(capacity);  // slot phrases hold L symbols per super-symbol
  std::vector<uint32_t> out;
  out.reserve(n);
  uint64_t blocks_done = 0;
  while (blocks_done < n_blocks) {
    uint64_t slot = r.get(slot_w);
    if (slot > capacity) throw DecodeError("slot out of range");
    std::vector<uint32_t> phrase;
    if (slot != 0) {
      if (!slots.active(slot)) throw DecodeError("reference to inactive slot");
      auto stored = slots.phrase(slot);
      phrase.assign(stored.begin(), stored.end());
    }
    uint64_t phrase_blocks = phrase.size() / L;
    if (phrase_blocks > n_blocks - blocks_done) {
      throw DecodeError("phrase exceeds declared length");
    }
    bool has_ext = !(slot != 0 && phrase_blocks == n_blocks - blocks_done);
    if (has_ext) {
      for (uint64_t i = 0; i < L; ++i) {
        uint64_t s = r.get(sym_w);
        if (s >= alphabet.size()) throw DecodeError("symbol out of range");
        phrase.push_back(static_cast<uint32_t>(s));
      }
      ++phrase_blocks;
    }
    out.insert(out.end(), phrase.begin(), phrase.end());
    blocks_done += phrase_blocks;
    if (has_ext && phrase_blocks <= max_len) {
      if (recency == RecencyMode::TouchOnMatch && slot != 0) slots.touch(slot);
      if (slots.full()) slots.release(slots.lru_slot());
      slots.insert(std::move(phrase));
    }
  }
  for (uint64_t i = 0; i < tail_len; ++i) {
    uint64_t s = r.get(sym_w);
    if (s >= alphabet.size()) throw DecodeError("symbol out of range");
    out.push_back(static_cast<uint32_t>(s));
  }
  if (r.remaining() != 0) throw DecodeError("trailing payload bits");
  return SymbolSeq(alphabet, std::move(out));
}

}  // namespace fslz
