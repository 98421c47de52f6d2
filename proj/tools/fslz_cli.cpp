#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "fslz/codecs.hpp"
#include "fslz/fsdl.hpp"
#include "fslz/sweep.hpp"

using namespace fslz;

namespace {

AlgorithmId algorithm_or_throw(const std::string& name) {
  if (auto id = algorithm_from_name(name)) return *id;
  throw UsageError("unknown algorithm: " + name);
}

RecencyMode recency_from_name(const std::string& name) {
  if (name == "touch") return RecencyMode::TouchOnMatch;
  if (name == "insert") return RecencyMode::InsertOnly;
  throw UsageError("unknown recency mode: " + name + " (expected touch or insert)");
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file: " + path);
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const void* data, size_t size) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file: " + path);
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw UsageError("failed writing output file: " + path);
}

SymbolSeq read_symbols(const std::string& path, bool bits) {
  std::vector<uint8_t> bytes = read_file(path);
  if (bits) return SymbolSeq::from_bits(bytes, bytes.size() * 8ull);
  return SymbolSeq::from_bytes(bytes);
}

// Binary sequences pack eight symbols per byte, MSB first, zero-padded;
// every other representable alphabet writes one byte per symbol.
void write_symbols(const std::string& path, const SymbolSeq& seq) {
  std::vector<uint8_t> bytes;
  if (seq.alphabet().size() == 2) {
    bytes.assign((seq.size() + 7) / 8, 0);
    for (uint64_t i = 0; i < seq.size(); ++i) {
      if (seq[i]) bytes[i / 8] |= static_cast<uint8_t>(0x80u >> (i % 8));
    }
  } else if (seq.alphabet().size() <= 256) {
    bytes.reserve(seq.size());
    for (uint64_t i = 0; i < seq.size(); ++i) bytes.push_back(static_cast<uint8_t>(seq[i]));
  } else {
    throw UsageError("cannot write symbols wider than a byte");
  }
  write_file(path, bytes.data(), bytes.size());
}

struct CodecOptions {
  std::string algo;
  uint64_t capacity = 0;
  bool capacity_set = false;
  uint64_t max_len = 0;
  bool max_len_set = false;
  std::string recency = "touch";
  // pipeline extras
  uint64_t block_len = 1;
  std::string d_max = "0";
  std::string measure = "hamming";
  uint64_t window = 0;
  bool exhaustive = false;
};

void add_codec_options(CLI::App* cmd, CodecOptions& opts, bool include_pipeline) {
  cmd->add_option("--algo", opts.algo, "algorithm: lz78, lz78lru, lzw, lzwlru, lz77w, fsdl")
      ->required();
  cmd->add_option("-D,--capacity", opts.capacity, "dictionary capacity / window factor")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--L-max", opts.max_len, "maximum stored phrase length")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--recency", opts.recency, "recency policy: touch (default) or insert");
  if (include_pipeline) {
    cmd->add_option("--L", opts.block_len, "pipeline block length")->check(CLI::PositiveNumber);
    cmd->add_option("--d-max", opts.d_max, "per-symbol distortion budget (rational)");
    cmd->add_option("--measure", opts.measure, "distortion measure name");
    cmd->add_option("--window", opts.window, "quantizer restart window in symbols");
    cmd->add_flag("--exhaustive", opts.exhaustive, "consider every block in A^L as a center");
  }
}

LruParams lru_params_from(const CodecOptions& opts) {
  if (!opts.capacity_set) {
    throw UsageError("algorithm " + opts.algo + " requires -D");
  }
  uint64_t max_len =
      opts.max_len_set ? opts.max_len : LruParams::default_max_len(opts.capacity);
  return LruParams{opts.capacity, max_len, recency_from_name(opts.recency)};
}

void reject_capacity_options(const CodecOptions& opts) {
  if (opts.capacity_set || opts.max_len_set) {
    throw UsageError("capacity options apply only to bounded-dictionary codecs");
  }
}

QuantizerConfig quantizer_config_from(const CodecOptions& opts) {
  QuantizerConfig cfg;
  cfg.block_len = opts.block_len;
  cfg.budget = parse_rational(opts.d_max);
  cfg.measure = &distortion_by_name(opts.measure);
  cfg.mode = opts.exhaustive ? CandidateMode::Exhaustive : CandidateMode::Observed;
  cfg.window_symbols = opts.window;
  return cfg;
}

EncodeOutput encode_with(const CodecOptions& opts, const SymbolSeq& input) {
  switch (algorithm_or_throw(opts.algo)) {
    case AlgorithmId::LZ78:
      reject_capacity_options(opts);
      return lz78_encode(input);
    case AlgorithmId::LZW:
      reject_capacity_options(opts);
      return lzw_encode(input);
    case AlgorithmId::LZ78_LRU:
      return lz78lru_encode(input, lru_params_from(opts));
    case AlgorithmId::LZW_LRU:
      return lzwlru_encode(input, lru_params_from(opts));
    case AlgorithmId::LZ77W:
      return lz77w_encode(input, lru_params_from(opts));
    case AlgorithmId::FSDL:
      break;
  }
  throw UsageError("fsdl is handled by the pipeline path");
}

int run_gen(const std::string& spec_text, const std::string& out_path, bool bits) {
  SourceSpec spec = parse_source_spec(spec_text);
  SymbolSeq seq = generate(spec);
  if (bits && seq.alphabet().size() != 2) {
    throw UsageError("--bits requires a binary alphabet");
  }
  write_symbols(out_path, seq);
  return 0;
}

int run_compress(const CodecOptions& opts, const std::string& in_path,
                 const std::string& out_path, bool bits) {
  SymbolSeq input = read_symbols(in_path, bits);
  Container container;
  if (algorithm_or_throw(opts.algo) == AlgorithmId::FSDL) {
    FsdlResult result = fsdl_encode(input, quantizer_config_from(opts), lru_params_from(opts));
    container = std::move(result.container);
  } else {
    container = encode_with(opts, input).container;
  }
  std::vector<uint8_t> bytes = write_container(container);
  write_file(out_path, bytes.data(), bytes.size());
  std::printf("%s: %llu symbols -> %zu bytes (%llu payload bits)\n", opts.algo.c_str(),
              static_cast<unsigned long long>(input.size()), bytes.size(),
              static_cast<unsigned long long>(container.payload.bit_length));
  return 0;
}

int run_decompress(const std::string& in_path, const std::string& out_path) {
  std::vector<uint8_t> bytes = read_file(in_path);
  Container container = read_container(bytes);
  write_symbols(out_path, decode_container(container));
  return 0;
}

int run_analyze(const CodecOptions& opts, const std::string& in_path, bool bits,
                const std::vector<uint64_t>& s_values, bool csv) {
  SymbolSeq input = read_symbols(in_path, bits);
  CompressionReport report;
  if (algorithm_or_throw(opts.algo) == AlgorithmId::FSDL) {
    if (s_values != std::vector<uint64_t>{1}) {
      throw UsageError("pipeline analysis reports the s=1 bound only");
    }
    report = fsdl_encode(input, quantizer_config_from(opts), lru_params_from(opts)).report;
  } else {
    EncodeOutput out = encode_with(opts, input);
    report = build_report(out.parse, out.container, s_values);
  }
  if (csv) {
    std::printf("%s\n%s\n", report_csv_header(s_values).c_str(),
                report_csv_row(report, s_values).c_str());
  } else {
    std::printf("%s\n", report_json(report).c_str());
  }
  return 0;
}

int run_quantize(const CodecOptions& opts, const std::string& in_path,
                 const std::string& out_path, std::string codebook_path, bool bits) {
  SymbolSeq input = read_symbols(in_path, bits);
  QuantizerConfig cfg = quantizer_config_from(opts);
  uint64_t usable = input.size() - input.size() % cfg.block_len;
  if (usable != input.size()) {
    std::fprintf(stderr, "note: dropping %llu trailing symbols not filling a block\n",
                 static_cast<unsigned long long>(input.size() - usable));
    input = SymbolSeq(input.alphabet(),
                      std::vector<uint32_t>(input.data().begin(),
                                            input.data().begin() + static_cast<long>(usable)));
  }
  QuantizeResult result = greedy_quantize(input, cfg);
  write_symbols(out_path, result.quantized);
  if (codebook_path.empty()) codebook_path = out_path + ".codebook.json";
  std::string json = codebook_json(result.codebook);
  write_file(codebook_path, json.data(), json.size());
  std::printf("quantized %llu blocks with %zu centers\n",
              static_cast<unsigned long long>(usable / cfg.block_len),
              result.codebook.centers.size());
  return 0;
}

int run_sweep_cmd(const CodecOptions& opts, const std::vector<uint64_t>& capacities,
                  const std::string& source_text, const std::string& in_path, bool bits,
                  const std::vector<uint64_t>& s_values, const std::string& out_path) {
  SweepSpec spec;
  if (!source_text.empty() && !in_path.empty()) {
    throw UsageError("pass either --source or --in, not both");
  }
  if (!source_text.empty()) {
    spec.source = parse_source_spec(source_text);
    spec.input = generate(*spec.source);
  } else if (!in_path.empty()) {
    spec.input = read_symbols(in_path, bits);
  } else {
    throw UsageError("sweep needs --source or --in");
  }
  spec.codec = algorithm_or_throw(opts.algo);
  spec.capacities = capacities;
  if (opts.max_len_set) spec.lmax_rule = {LmaxRule::Kind::Fixed, opts.max_len};
  spec.recency = recency_from_name(opts.recency);
  spec.s_values = s_values;
  spec.output_path = out_path;
  SweepResult result = run_sweep(spec);
  std::printf("wrote %s: %zu data rows, %zu reference rows\n", out_path.c_str(),
              result.rows.size(), result.csv_lines.size() - 1 - result.rows.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constrained-dictionary compression toolkit"};
  app.require_subcommand(1);

  // gen
  std::string gen_spec, gen_out;
  bool gen_bits = false;
  auto* gen = app.add_subcommand("gen", "write a synthetic source to a file");
  gen->add_option("--spec", gen_spec,
                  "source spec, e.g. bernoulli:0.5:100000:seed42, iid:1/4,3/4:1000, "
                  "markov:9/10,1/10;1/10,9/10:1000, constant:2:500, periodic:0,1:64")
      ->required();
  gen->add_option("out", gen_out, "output file")->required();
  gen->add_flag("--bits", gen_bits, "pack a binary sequence eight symbols per byte");

  // compress
  CodecOptions comp_opts;
  std::string comp_in, comp_out;
  bool comp_bits = false;
  auto* comp = app.add_subcommand("compress", "encode a file into a container");
  add_codec_options(comp, comp_opts, true);
  comp->add_option("in", comp_in, "input file")->required();
  comp->add_option("out", comp_out, "output container")->required();
  comp->add_flag("--bits", comp_bits, "treat input as a binary sequence, MSB first");

  // decompress
  std::string dec_in, dec_out;
  auto* dec = app.add_subcommand("decompress", "decode a container back to symbols");
  dec->add_option("in", dec_in, "input container")->required();
  dec->add_option("out", dec_out, "output file")->required();

  // analyze
  CodecOptions ana_opts;
  std::string ana_in;
  bool ana_bits = false, ana_csv = false;
  std::vector<uint64_t> ana_s{1};
  auto* ana = app.add_subcommand("analyze", "print a compression report without writing output");
  add_codec_options(ana, ana_opts, true);
  ana->add_option("in", ana_in, "input file")->required();
  ana->add_option("--s", ana_s, "state counts for the lower bounds")->delimiter(',');
  ana->add_flag("--bits", ana_bits, "treat input as a binary sequence, MSB first");
  ana->add_flag("--csv", ana_csv, "emit the csv header and row instead of json");

  // quantize
  CodecOptions qnt_opts;
  std::string qnt_in, qnt_out, qnt_codebook;
  bool qnt_bits = false;
  auto* qnt = app.add_subcommand("quantize", "run the block quantizer alone");
  qnt->add_option("--L", qnt_opts.block_len, "block length")->check(CLI::PositiveNumber);
  qnt->add_option("--d-max", qnt_opts.d_max, "per-symbol distortion budget (rational)");
  qnt->add_option("--measure", qnt_opts.measure, "distortion measure name");
  qnt->add_option("--window", qnt_opts.window, "restart window in symbols");
  qnt->add_flag("--exhaustive", qnt_opts.exhaustive, "consider every block in A^L");
  qnt->add_option("in", qnt_in, "input file")->required();
  qnt->add_option("out", qnt_out, "quantized output file")->required();
  qnt->add_option("--codebook", qnt_codebook, "codebook json path (default out.codebook.json)");
  qnt->add_flag("--bits", qnt_bits, "treat input as a binary sequence, MSB first");

  // sweep
  CodecOptions swp_opts;
  swp_opts.algo = "lz78lru";
  std::vector<uint64_t> swp_capacities, swp_s{1};
  std::string swp_source, swp_in, swp_out;
  bool swp_bits = false;
  auto* swp = app.add_subcommand("sweep", "encode one input across a capacity ladder");
  swp->add_option("--algo", swp_opts.algo, "lz78lru (default), lzwlru, or lz77w");
  swp->add_option("-D,--D", swp_capacities, "capacities, strictly increasing")
      ->delimiter(',')
      ->required();
  swp->add_option("--L-max", swp_opts.max_len, "fixed L_max (default: squared-log rule)");
  swp->add_option("--recency", swp_opts.recency, "touch (default) or insert");
  swp->add_option("--s", swp_s, "state counts for the lower bounds")->delimiter(',');
  swp->add_option("--source", swp_source, "generate the input from a source spec");
  swp->add_option("--in", swp_in, "read the input from a file");
  swp->add_flag("--bits", swp_bits, "treat --in as a binary sequence");
  swp->add_option("--out", swp_out, "csv output path")->required();

  try {
    app.parse(argc, argv);
    comp_opts.capacity_set = comp->count("-D") > 0;
    comp_opts.max_len_set = comp->count("--L-max") > 0;
    ana_opts.capacity_set = ana->count("-D") > 0;
    ana_opts.max_len_set = ana->count("--L-max") > 0;
    swp_opts.max_len_set = swp->count("--L-max") > 0;

    if (gen->parsed()) return run_gen(gen_spec, gen_out, gen_bits);
    if (comp->parsed()) return run_compress(comp_opts, comp_in, comp_out, comp_bits);
    if (dec->parsed()) return run_decompress(dec_in, dec_out);
    if (ana->parsed()) return run_analyze(ana_opts, ana_in, ana_bits, ana_s, ana_csv);
    if (qnt->parsed()) return run_quantize(qnt_opts, qnt_in, qnt_out, qnt_codebook, qnt_bits);
    if (swp->parsed()) {
      return run_sweep_cmd(swp_opts, swp_capacities, swp_source, swp_in, swp_bits, swp_s,
                           swp_out);
    }
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const FormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const DecodeError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
