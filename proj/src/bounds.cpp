#include "fslz/bounds.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "fslz/codecs.hpp"

namespace fslz {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

const char* tag_name(ParamTag tag) {
  switch (tag) {
    case ParamTag::D: return "D";
    case ParamTag::L_MAX: return "L_max";
    case ParamTag::L: return "L";
    case ParamTag::D_MAX_NUM: return "d_max_num";
    case ParamTag::D_MAX_DEN: return "d_max_den";
    case ParamTag::WINDOW: return "window";
    case ParamTag::RECENCY: return "recency";
  }
  return "unknown";
}

}  // namespace

double PhraseStats::entropy() const {
  double h = 0.0;
  for (const auto& [value, count] : counts) {
    double p = static_cast<double>(count) / static_cast<double>(c);
    h -= p * std::log2(p);
  }
  return h;
}

PhraseStats phrase_stats(const ParseResult& parse, uint32_t alphabet_size) {
  if (parse.phrases.empty()) throw UsageError("empty parse");
  PhraseStats stats;
  stats.alphabet_size = alphabet_size;
  stats.c = parse.phrases.size();
  for (const Phrase& p : parse.phrases) {
    ++stats.counts[p.symbols];
    stats.n += p.symbols.size();
  }
  stats.k = stats.counts.size();
  return stats;
}

BoundValue fs_lower_bound(const PhraseStats& stats, const BoundParams& bp) {
  if (bp.s < 1) throw UsageError("state count must be at least 1");
  double log_a = std::log2(static_cast<double>(stats.alphabet_size));
  double factor = static_cast<double>(stats.c) / (static_cast<double>(stats.n) * log_a);
  double value = factor * (stats.entropy() - 2.0 * std::log2(static_cast<double>(bp.s)));
  return {value, factor};
}

double lz78_lower_estimate(const SymbolSeq& input) {
  if (input.empty()) throw UsageError("empty input");
  ParseResult parse = lz78_encode(input).parse;
  PhraseStats stats = phrase_stats(parse, input.alphabet().size());
  double cn = static_cast<double>(stats.k);
  double log_a = std::log2(static_cast<double>(input.alphabet().size()));
  return cn * std::log2(cn) / (static_cast<double>(input.size()) * log_a);
}

double nominal_ratio_for(AlgorithmId id, uint64_t c, uint64_t n, uint32_t alphabet_size,
                         const std::map<ParamTag, uint64_t>& params) {
  if (n == 0 || c == 0) return 0.0;
  double log_a = std::log2(static_cast<double>(alphabet_size));
  double per_phrase = 0.0;
  auto param = [&](ParamTag tag) {
    auto it = params.find(tag);
    if (it == params.end()) throw UsageError("missing parameter for nominal ratio");
    return static_cast<double>(it->second);
  };
  switch (id) {
    case AlgorithmId::LZ78:
      per_phrase = std::log2(static_cast<double>(c)) + 1.0 + log_a;
      break;
    case AlgorithmId::LZ78_LRU:
      per_phrase = std::log2(param(ParamTag::D)) + 1.0 + log_a;
      break;
    case AlgorithmId::LZW:
      per_phrase = std::log2(static_cast<double>(alphabet_size + c));
      break;
    case AlgorithmId::LZW_LRU:
      per_phrase = std::log2(param(ParamTag::D) + alphabet_size + 1.0);
      break;
    case AlgorithmId::LZ77W:
      per_phrase = std::log2(param(ParamTag::WINDOW) + 1.0) +
                   std::log2(param(ParamTag::L_MAX) + 1.0) + log_a;
      break;
    case AlgorithmId::FSDL:
      per_phrase = std::log2(param(ParamTag::D)) + 1.0 + param(ParamTag::L) * log_a;
      break;
  }
  return static_cast<double>(c) * per_phrase / (static_cast<double>(n) * log_a);
}

CompressionReport build_report(const ParseResult& parse, const Container& container,
                               const std::vector<uint64_t>& s_values) {
  if (container.algorithm == AlgorithmId::FSDL) {
    throw UsageError("pipeline reports are built by the pipeline encoder");
  }
  CompressionReport report;
  report.algorithm = algorithm_name(container.algorithm);
  report.n = container.original_length;
  report.c = parse.phrases.size();
  report.overlong = parse.overlong_count;
  report.payload_bits = container.payload.bit_length;
  for (const auto& [tag, value] : container.params) {
    report.params[tag_name(tag)] = std::to_string(value);
  }
  double log_a = std::log2(static_cast<double>(container.alphabet_size));
  if (report.n == 0) {
    for (uint64_t s : s_values) report.bounds.emplace_back(s, 0.0);
    return report;
  }
  PhraseStats stats = phrase_stats(parse, container.alphabet_size);
  if (stats.n != container.original_length) {
    throw UsageError("parse does not match container");
  }
  report.k = stats.k;
  report.nominal_ratio = nominal_ratio_for(container.algorithm, report.c, report.n,
                                           container.alphabet_size, container.params);
  report.actual_ratio =
      static_cast<double>(report.payload_bits) / (static_cast<double>(report.n) * log_a);
  for (uint64_t s : s_values) {
    BoundValue b = fs_lower_bound(stats, {s});
    report.bounds.emplace_back(s, b.value);
    report.bound_slack = b.slack;
  }
  if (container.algorithm == AlgorithmId::LZ78) {
    report.lz78_estimate = static_cast<double>(stats.k) *
                           std::log2(static_cast<double>(stats.k)) /
                           (static_cast<double>(report.n) * log_a);
  } else {
    SymbolSeq original(Alphabet(container.alphabet_size), concat_phrases(parse));
    report.lz78_estimate = lz78_lower_estimate(original);
  }
  return report;
}

std::string report_json(const CompressionReport& report) {
  nlohmann::ordered_json j;
  j["algorithm"] = report.algorithm;
  for (const auto& [key, value] : report.params) j[key] = value;
  j["n"] = report.n;
  j["c"] = report.c;
  j["k"] = report.k;
  j["overlong"] = report.overlong;
  j["payload_bits"] = report.payload_bits;
  j["nominal_ratio"] = report.nominal_ratio;
  j["actual_ratio"] = report.actual_ratio;
  j["bound_slack"] = report.bound_slack;
  for (const auto& [s, value] : report.bounds) {
    j["fs_bound_s" + std::to_string(s)] = value;
  }
  if (report.lz78_estimate) j["lz78_estimate"] = *report.lz78_estimate;
  return j.dump(2);
}

std::string report_csv_header(const std::vector<uint64_t>& s_values) {
  std::string h =
      "algorithm,D,L_max,n,c,k,overlong,payload_bits,nominal_ratio,actual_ratio,bound_slack";
  for (uint64_t s : s_values) h += ",fs_bound_s" + std::to_string(s);
  h += ",lz78_estimate,entropy_rate,extra";
  return h;
}

std::string report_csv_row(const CompressionReport& report,
                           const std::vector<uint64_t>& s_values,
                           std::optional<double> entropy_rate) {
  auto lookup = [&](const char* key) -> std::string {
    auto it = report.params.find(key);
    return it == report.params.end() ? std::string() : it->second;
  };
  std::string row = report.algorithm;
  row += "," + lookup("D");
  row += "," + lookup("L_max");
  row += "," + std::to_string(report.n);
  row += "," + std::to_string(report.c);
  row += "," + std::to_string(report.k);
  row += "," + std::to_string(report.overlong);
  row += "," + std::to_string(report.payload_bits);
  row += "," + fmt_double(report.nominal_ratio);
  row += "," + fmt_double(report.actual_ratio);
  row += "," + fmt_double(report.bound_slack);
  for (uint64_t s : s_values) {
    std::string cell;
    for (const auto& [bs, value] : report.bounds) {
      if (bs == s) cell = fmt_double(value);
    }
    row += "," + cell;
  }
  row += ",";
  if (report.lz78_estimate) row += fmt_double(*report.lz78_estimate);
  row += ",";
  if (entropy_rate) row += fmt_double(*entropy_rate);
  std::string extra;
  for (const auto& [key, value] : report.params) {
    if (std::string(key) == "D" || std::string(key) == "L_max") continue;
    if (!extra.empty()) extra += ";";
    extra += key + "=" + value;
  }
  row += "," + extra;
  return row;
}

}  // namespace fslz
