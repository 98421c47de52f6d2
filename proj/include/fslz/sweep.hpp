#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fslz/bounds.hpp"
#include "fslz/codecs.hpp"
#include "fslz/sources.hpp"

namespace fslz {

// How L_max is derived from each swept D.
struct LmaxRule {
  enum class Kind : uint8_t { SquaredLog, Fixed };
  Kind kind = Kind::SquaredLog;
  uint64_t fixed_value = 0;

  uint64_t value_for(uint64_t capacity) const {
    return kind == Kind::SquaredLog ? LruParams::default_max_len(capacity) : fixed_value;
  }
};

struct SweepSpec {
  SymbolSeq input = SymbolSeq(Alphabet(2));  // the one sequence every row encodes
  std::optional<SourceSpec> source;     // set when the input was generated
  AlgorithmId codec = AlgorithmId::LZ78_LRU;
  std::vector<uint64_t> capacities;     // strictly increasing D values
  LmaxRule lmax_rule;
  RecencyMode recency = RecencyMode::TouchOnMatch;
  std::vector<uint64_t> s_values{1};
  std::string output_path;              // empty: no file written
};

struct SweepResult {
  std::vector<CompressionReport> rows;      // one per D, parameter order
  CompressionReport lz78_reference;
  std::optional<double> entropy_reference;  // when the source has a known rate
  std::vector<std::string> csv_lines;       // header + reference rows + data rows
};

// Encodes the input once per D with the configured codec, plus an
// unconstrained-dictionary reference row and the source entropy rate when
// known.  Rows are independent and computed in parallel; output order is
// parameter order.
SweepResult run_sweep(const SweepSpec& spec);

}  // namespace fslz
