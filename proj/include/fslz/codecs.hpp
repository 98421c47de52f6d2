#pragma once

#include "fslz/container.hpp"
#include "fslz/lru_params.hpp"
#include "fslz/parse.hpp"
#include "fslz/types.hpp"

namespace fslz {

// Encoders return both the serialized container and the parse that
// produced it, so analysis can reuse the phrase structure without a
// second pass.
struct EncodeOutput {
  Container container;
  ParseResult parse;
};

// Incremental parsing with an unbounded phrase dictionary.  Phrase k is
// emitted as a phrase index of ceil(log2 k) bits plus one extension
// symbol; the final phrase may omit the extension.
EncodeOutput lz78_encode(const SymbolSeq& input);
SymbolSeq lz78_decode(const Container& container);

// Bounded-dictionary variant: D evictable slots, stored phrases capped at
// max_len, least-recently-used eviction.  A phrase one symbol past the cap
// is emitted normally but leaves the dictionary untouched.
EncodeOutput lz78lru_encode(const SymbolSeq& input, const LruParams& params);
SymbolSeq lz78lru_decode(const Container& container);

// Index-only coding with the alphabet pre-seeded; each phrase is a
// dictionary entry and the previous phrase extended by the current one's
// first symbol joins the dictionary.
EncodeOutput lzw_encode(const SymbolSeq& input);
SymbolSeq lzw_decode(const Container& container);

// Index-only variant over a bounded dictionary: the seeded single-symbol
// entries are permanent, created entries live in D evictable slots, and
// every codeword is ceil(log2(A + D + 1)) bits.  capacity 0 degenerates
// to coding single symbols.
EncodeOutput lzwlru_encode(const SymbolSeq& input, const LruParams& params);
SymbolSeq lzwlru_decode(const Container& container);

// Sliding-window parsing over a window of D * max_len symbols, emitting
// (offset, length, extension) with match length capped at max_len.
// Offset 0 with length 0 encodes a literal; matches may overlap their own
// output.  Ties in length resolve to the smallest offset.
EncodeOutput lz77w_encode(const SymbolSeq& input, const LruParams& params);
SymbolSeq lz77w_decode(const Container& container);

// Decodes any container produced by this library, dispatching on the
// algorithm id.
SymbolSeq decode_container(const Container& container);

}  // namespace fslz
