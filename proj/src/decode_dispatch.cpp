#include "fslz/codecs.hpp"
#include "fslz/fsdl.hpp"

namespace fslz {

SymbolSeq decode_container(const Container& container) {
  switch (container.algorithm) {
    case AlgorithmId::LZ78: return lz78_decode(container);
    case AlgorithmId::LZ78_LRU: return lz78lru_decode(container);
    case AlgorithmId::LZW: return lzw_decode(container);
    case AlgorithmId::LZW_LRU: return lzwlru_decode(container);
    case AlgorithmId::LZ77W: return lz77w_decode(container);
    case AlgorithmId::FSDL: return fsdl_decode(container);
  }
  throw UsageError("unknown algorithm id");
}

}  // namespace fslz
