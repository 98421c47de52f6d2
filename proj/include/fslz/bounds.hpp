#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fslz/container.hpp"
#include "fslz/parse.hpp"
#include "fslz/types.hpp"

namespace fslz {

// Empirical distribution of phrase values in a parse.
struct PhraseStats {
  std::map<std::vector<uint32_t>, uint64_t> counts;  // distinct value -> occurrences
  uint64_t c = 0;             // total phrase count
  uint64_t k = 0;             // distinct phrase count
  uint64_t n = 0;             // source length (sum of phrase lengths)
  uint32_t alphabet_size = 2;

  // Shannon entropy of the distribution over distinct phrase values, bits.
  double entropy() const;
};

// State count of the finite-state comparison class.
struct BoundParams {
  uint64_t s = 1;
};

// A lower bound plus its separately-reported slack term.  The slack has an
// unspecified constant and is never folded into the value.
struct BoundValue {
  double value = 0.0;
  double slack = 0.0;
};

PhraseStats phrase_stats(const ParseResult& parse, uint32_t alphabet_size);

// Lower bound on the compression ratio achievable by any information-
// lossless finite-state encoder with at most s states, evaluated from an
// arbitrary parsing:  (c / (n log2 A)) * [ H(phrases) - 2 log2 s ], with
// slack c / (n log2 A).  May be negative on small inputs; returned as-is.
BoundValue fs_lower_bound(const PhraseStats& stats, const BoundParams& bp);

// Finite-n evaluation of the parse-growth lower bound: runs lz78_encode,
// counts distinct phrases C_n, and returns C_n log2(C_n) / (n log2 A).
double lz78_lower_estimate(const SymbolSeq& input);

// Everything a single encode run reports: phrase counts, the bit-exact and
// idealized ratios, and the requested lower bounds.
struct CompressionReport {
  std::string algorithm;
  uint64_t n = 0;
  uint64_t c = 0;
  uint64_t k = 0;
  uint64_t overlong = 0;
  uint64_t payload_bits = 0;
  double nominal_ratio = 0.0;
  double actual_ratio = 0.0;
  std::vector<std::pair<uint64_t, double>> bounds;  // (s, lower bound)
  double bound_slack = 0.0;
  std::optional<double> lz78_estimate;
  std::map<std::string, std::string> params;
};

// Idealized per-phrase cost for a codec, in bits (no integer rounding):
//   lz78     log2 c + 1 + log2 A          lzw      log2(A + c)
//   lz78lru  log2 D + 1 + log2 A          lzwlru   log2(A + D + 1)
//   lz77w    log2(W+1) + log2(Lmax+1) + log2 A
// The pipeline codec reports log2 D + 1 + L log2 A per phrase.
double nominal_ratio_for(AlgorithmId id, uint64_t c, uint64_t n, uint32_t alphabet_size,
                         const std::map<ParamTag, uint64_t>& params);

// Builds the report for a lossless encode; parse and container must come
// from the same call.  The pipeline codec builds its own report.
CompressionReport build_report(const ParseResult& parse, const Container& container,
                               const std::vector<uint64_t>& s_values);

// Flat JSON object mirroring the CSV row.
std::string report_json(const CompressionReport& report);

// Fixed CSV schema (version 1): identifying columns, then
// n,c,k,overlong,payload_bits,nominal_ratio,actual_ratio,bound_slack,
// one fs_bound_s<value> column per requested s, lz78_estimate,entropy_rate.
std::string report_csv_header(const std::vector<uint64_t>& s_values);
std::string report_csv_row(const CompressionReport& report,
                           const std::vector<uint64_t>& s_values,
                           std::optional<double> entropy_rate = std::nullopt);

}  // namespace fslz
