#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fslz/distortion.hpp"
#include "fslz/types.hpp"

namespace fslz {

// Where candidate centers come from: every vector in A^L (guarded), or
// only the blocks that occur in the input.
enum class CandidateMode : uint8_t {
  Exhaustive,
  Observed,
};

struct QuantizerConfig {
  uint64_t block_len = 1;  // L
  Rational budget;         // per-symbol allowance; a block may move by block_len * budget
  CandidateMode mode = CandidateMode::Observed;
  const DistortionMeasure* measure = &distortion_by_name("hamming");
  // 0 processes the whole input as one window; otherwise the quantizer
  // restarts with a fresh codebook every window_symbols symbols (must be a
  // multiple of block_len).
  uint64_t window_symbols = 0;
};

// Flat storage for consecutive fixed-length blocks.
struct BlockArray {
  std::vector<uint32_t> data;
  uint64_t block_len = 1;

  uint64_t count() const { return data.size() / block_len; }
  std::span<const uint32_t> block(uint64_t i) const {
    return std::span<const uint32_t>(data).subspan(i * block_len, block_len);
  }
};

// Greedily built codebook.  Centers are appended in selection order;
// within each window coverage_counts are non-increasing.
struct Codebook {
  uint64_t block_len = 1;
  std::vector<std::vector<uint32_t>> centers;
  std::vector<uint64_t> assignments;      // block index -> center index
  std::vector<uint64_t> coverage_counts;  // blocks covered when the center was chosen
  std::vector<uint64_t> window_starts;    // first block index of each window
};

struct QuantizeResult {
  Codebook codebook;
  SymbolSeq quantized;
};

// Number of not-yet-covered blocks within the block budget of `center`.
uint64_t ball_coverage(std::span<const uint32_t> center, const BlockArray& blocks,
                       const std::vector<uint8_t>& covered, const QuantizerConfig& cfg);

// Coverage of every candidate in one pass; the two variants compute the
// same counts, one sequentially and one with OpenMP across candidates.
std::vector<uint64_t> coverage_counts_serial(const BlockArray& candidates,
                                             const BlockArray& blocks,
                                             const std::vector<uint8_t>& covered,
                                             const QuantizerConfig& cfg);
std::vector<uint64_t> coverage_counts_parallel(const BlockArray& candidates,
                                               const BlockArray& blocks,
                                               const std::vector<uint8_t>& covered,
                                               const QuantizerConfig& cfg);

// Repeatedly picks the candidate covering the most uncovered blocks (ties:
// lexicographically smallest center), assigns the covered blocks to it,
// and stops when every block is assigned.  Input length must be a
// multiple of block_len.
QuantizeResult greedy_quantize(const SymbolSeq& input, const QuantizerConfig& cfg);

std::string codebook_json(const Codebook& codebook);

}  // namespace fslz
