#include "fslz/quantizer.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

namespace fslz {

namespace {

Rational block_budget(const QuantizerConfig& cfg) {
  return static_cast<int64_t>(cfg.block_len) * cfg.budget;
}

bool within_budget(std::span<const uint32_t> block, std::span<const uint32_t> center,
                   const Rational& budget, const QuantizerConfig& cfg) {
  return cfg.measure->evaluate(block, center) <= budget;
}

uint64_t exhaustive_count(uint32_t alphabet_size, uint64_t block_len) {
  constexpr uint64_t kGuard = 1ull << 20;
  uint64_t total = 1;
  for (uint64_t i = 0; i < block_len; ++i) {
    if (total > kGuard / alphabet_size + 1) return kGuard + 1;
    total *= alphabet_size;
    if (total > kGuard) return kGuard + 1;
  }
  return total;
}

BlockArray exhaustive_candidates(uint32_t alphabet_size, uint64_t block_len) {
  uint64_t total = exhaustive_count(alphabet_size, block_len);
  if (total > (1ull << 20)) {
    throw UsageError("candidate space too large for exhaustive mode");
  }
  BlockArray candidates;
  candidates.block_len = block_len;
  candidates.data.reserve(total * block_len);
  std::vector<uint32_t> digits(block_len, 0);
  for (uint64_t i = 0; i < total; ++i) {
    candidates.data.insert(candidates.data.end(), digits.begin(), digits.end());
    // increment base-A counter, least significant digit last => lex order
    for (uint64_t j = block_len; j-- > 0;) {
      if (++digits[j] < alphabet_size) break;
      digits[j] = 0;
    }
  }
  return candidates;
}

BlockArray observed_candidates(const BlockArray& blocks) {
  std::vector<std::vector<uint32_t>> distinct;
  distinct.reserve(blocks.count());
  for (uint64_t i = 0; i < blocks.count(); ++i) {
    auto b = blocks.block(i);
    distinct.emplace_back(b.begin(), b.end());
  }
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  BlockArray candidates;
  candidates.block_len = blocks.block_len;
  candidates.data.reserve(distinct.size() * blocks.block_len);
  for (const auto& b : distinct) {
    candidates.data.insert(candidates.data.end(), b.begin(), b.end());
  }
  return candidates;
}

// Zero budget with a faithful measure: each center covers exactly the
// occurrences of its own value, so greedy order is occurrence count
// descending with lexicographic tie-break.
void quantize_identity_window(const BlockArray& blocks, uint64_t first_block,
                              Codebook& book) {
  std::map<std::vector<uint32_t>, uint64_t> counts;
  for (uint64_t i = 0; i < blocks.count(); ++i) {
    auto b = blocks.block(i);
    ++counts[std::vector<uint32_t>(b.begin(), b.end())];
  }
  std::vector<std::pair<std::vector<uint32_t>, uint64_t>> order(counts.begin(), counts.end());
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::map<std::vector<uint32_t>, uint64_t> center_of;
  for (const auto& [value, count] : order) {
    center_of[value] = book.centers.size();
    book.centers.push_back(value);
    book.coverage_counts.push_back(count);
  }
  for (uint64_t i = 0; i < blocks.count(); ++i) {
    auto b = blocks.block(i);
    book.assignments[first_block + i] =
        center_of[std::vector<uint32_t>(b.begin(), b.end())];
  }
}

}  // namespace

uint64_t ball_coverage(std::span<const uint32_t> center, const BlockArray& blocks,
                       const std::vector<uint8_t>& covered, const QuantizerConfig& cfg) {
  Rational budget = block_budget(cfg);
  uint64_t count = 0;
  for (uint64_t i = 0; i < blocks.count(); ++i) {
    if (covered[i]) continue;
    if (within_budget(blocks.block(i), center, budget, cfg)) ++count;
  }
  return count;
}

std::vector<uint64_t> coverage_counts_serial(const BlockArray& candidates,
                                             const BlockArray& blocks,
                                             const std::vector<uint8_t>& covered,
                                             const QuantizerConfig& cfg) {
  std::vector<uint64_t> counts(candidates.count());
  for (uint64_t ci = 0; ci < candidates.count(); ++ci) {
    counts[ci] = ball_coverage(candidates.block(ci), blocks, covered, cfg);
  }
  return counts;
}

std::vector<uint64_t> coverage_counts_parallel(const BlockArray& candidates,
                                               const BlockArray& blocks,
                                               const std::vector<uint8_t>& covered,
                                               const QuantizerConfig& cfg) {
  std::vector<uint64_t> counts(candidates.count());
  const int64_t total = static_cast<int64_t>(candidates.count());
#pragma omp parallel for schedule(dynamic, 16)
  for (int64_t ci = 0; ci < total; ++ci) {
    counts[ci] = ball_coverage(candidates.block(ci), blocks, covered, cfg);
  }
  return counts;
}

QuantizeResult greedy_quantize(const SymbolSeq& input, const QuantizerConfig& cfg) {
  const uint64_t L = cfg.block_len;
  if (L < 1) throw UsageError("block length must be at least 1");
  if (input.size() % L != 0) throw UsageError("input length not a multiple of block length");
  if (cfg.window_symbols % L != 0) {
    throw UsageError("window size not a multiple of block length");
  }
  if (cfg.mode == CandidateMode::Exhaustive &&
      exhaustive_count(input.alphabet().size(), L) > (1ull << 20)) {
    throw UsageError("candidate space too large for exhaustive mode");
  }
  const uint64_t total_blocks = input.size() / L;
  const uint64_t window_blocks =
      cfg.window_symbols == 0 ? total_blocks : cfg.window_symbols / L;
  Codebook book;
  book.block_len = L;
  book.assignments.assign(total_blocks, 0);
  Rational budget = block_budget(cfg);
  uint64_t first_block = 0;
  while (first_block < total_blocks) {
    uint64_t count = std::min(window_blocks, total_blocks - first_block);
    book.window_starts.push_back(first_block);
    BlockArray blocks;
    blocks.block_len = L;
    blocks.data.assign(input.view().begin() + first_block * L,
                       input.view().begin() + (first_block + count) * L);
    if (cfg.budget.num == 0 && cfg.measure->zero_iff_equal) {
      quantize_identity_window(blocks, first_block, book);
      first_block += count;
      continue;
    }
    BlockArray candidates = cfg.mode == CandidateMode::Exhaustive
                                ? exhaustive_candidates(input.alphabet().size(), L)
                                : observed_candidates(blocks);
    std::vector<uint8_t> covered(count, 0);
    uint64_t remaining = count;
    while (remaining > 0) {
#ifdef _OPENMP
      std::vector<uint64_t> counts = coverage_counts_parallel(candidates, blocks, covered, cfg);
#else
      std::vector<uint64_t> counts = coverage_counts_serial(candidates, blocks, covered, cfg);
#endif
      uint64_t best = 0;
      for (uint64_t ci = 1; ci < counts.size(); ++ci) {
        if (counts[ci] > counts[best]) best = ci;  // first max = lex smallest
      }
      if (counts[best] == 0) throw Error("no candidate covers an uncovered block");
      auto center = candidates.block(best);
      uint64_t center_idx = book.centers.size();
      book.centers.emplace_back(center.begin(), center.end());
      book.coverage_counts.push_back(counts[best]);
      for (uint64_t i = 0; i < count; ++i) {
        if (covered[i]) continue;
        if (within_budget(blocks.block(i), center, budget, cfg)) {
          covered[i] = 1;
          book.assignments[first_block + i] = center_idx;
          --remaining;
        }
      }
      // a candidate that covers nothing now never covers anything later
      BlockArray pruned;
      pruned.block_len = L;
      for (uint64_t ci = 0; ci < counts.size(); ++ci) {
        if (ci == best || counts[ci] == 0) continue;
        auto b = candidates.block(ci);
        pruned.data.insert(pruned.data.end(), b.begin(), b.end());
      }
      candidates = std::move(pruned);
    }
    first_block += count;
  }
  std::vector<uint32_t> out;
  out.reserve(input.size());
  for (uint64_t i = 0; i < total_blocks; ++i) {
    const auto& center = book.centers[book.assignments[i]];
    out.insert(out.end(), center.begin(), center.end());
  }
  QuantizeResult result{std::move(book), SymbolSeq(input.alphabet(), std::move(out))};
  return result;
}

std::string codebook_json(const Codebook& codebook) {
  nlohmann::ordered_json j;
  j["block_len"] = codebook.block_len;
  j["centers"] = codebook.centers;
  j["assignments"] = codebook.assignments;
  j["coverage_counts"] = codebook.coverage_counts;
  j["window_starts"] = codebook.window_starts;
  return j.dump(2);
}

}  // namespace fslz
