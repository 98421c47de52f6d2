#pragma once

#include "fslz/bounds.hpp"
#include "fslz/codecs.hpp"
#include "fslz/quantizer.hpp"

namespace fslz {

// How the block-entropy sum in fsld_lower_bound ranges over the parsed
// blocks.  DistinctValues sums p log2(1/p) once per distinct block value
// (the adopted reading); PerOccurrence sums the same term once per block
// occurrence, which over-counts duplicates and is kept only for
// comparison.
enum class BlockEntropyReading : uint8_t {
  DistinctValues,
  PerOccurrence,
};

// Lower bound on the distortion-limited finite-state compression ratio,
// from the empirical distribution of the c = N/L quantized blocks:
//   (L / (N log2 A)) * S  -  2 log2 s / (L log2 A)
// with S the entropy sum under `reading`; slack 1/(L log2 A) reported
// separately.
BoundValue fsld_lower_bound(const std::vector<std::vector<uint32_t>>& blocks,
                            const BoundParams& bp, uint32_t alphabet_size,
                            BlockEntropyReading reading = BlockEntropyReading::DistinctValues);

// Documented default coupling between block length and dictionary
// capacity: log2 D = L^3, so D = 2^(L^3).  A guide, not a constraint —
// it explodes quickly (L=3 already gives 2^27).
uint64_t coupled_capacity(uint64_t block_len);

// Smallest window the coupling asks for: D * ceil(log2 D) symbols.
uint64_t coupled_min_window(uint64_t capacity);

struct FsdlResult {
  Container container;
  CompressionReport report;
  Codebook codebook;
  SymbolSeq quantized;   // quantized prefix + literal tail
  ParseResult parse;     // phrases over center ids
};

// Quantizes the input into L-blocks, then compresses the block stream
// with the bounded-dictionary codec over the block super-alphabet (each
// block emitted as L raw symbols).  A final partial block is carried
// through literally.  Lossy by design: decoding returns the quantized
// sequence.
FsdlResult fsdl_encode(const SymbolSeq& input, const QuantizerConfig& cfg,
                       const LruParams& params);

SymbolSeq fsdl_decode(const Container& container);

}  // namespace fslz
