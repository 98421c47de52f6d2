#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fslz/codecs.hpp"
#include "fslz/sweep.hpp"
#include "helpers.hpp"

using namespace fslz;

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("constant and periodic sources are fixed sequences") {
  SourceSpec constant;
  constant.kind = SourceKind::Constant;
  constant.alphabet_size = 4;
  constant.length = 10;
  SymbolSeq seq = generate(constant);
  CHECK(seq.size() == 10);
  CHECK(seq.alphabet().size() == 4);
  for (uint64_t i = 0; i < seq.size(); ++i) CHECK(seq[i] == 0);

  SourceSpec periodic;
  periodic.kind = SourceKind::Periodic;
  periodic.alphabet_size = 2;
  periodic.pattern = {1, 0, 1};
  periodic.length = 7;
  SymbolSeq cyc = generate(periodic);
  CHECK(cyc.data() == std::vector<uint32_t>{1, 0, 1, 1, 0, 1, 1});

  periodic.pattern = {2};
  CHECK_THROWS_AS(generate(periodic), UsageError);
  periodic.pattern = {};
  CHECK_THROWS_AS(generate(periodic), UsageError);
}

TEST_CASE("iid generation is seed-deterministic") {
  SourceSpec spec;
  spec.kind = SourceKind::Iid;
  spec.alphabet_size = 2;
  spec.probabilities = {Rational(1, 2), Rational(1, 2)};
  spec.length = 200;
  spec.seed = 7;
  SymbolSeq a = generate(spec);
  SymbolSeq b = generate(spec);
  CHECK(a == b);
  spec.seed = 8;
  CHECK_FALSE(a == generate(spec));

  SourceSpec degenerate = spec;
  degenerate.probabilities = {Rational(1, 1), Rational(0, 1)};
  SymbolSeq zeros = generate(degenerate);
  for (uint64_t i = 0; i < zeros.size(); ++i) CHECK(zeros[i] == 0);

  SourceSpec bad = spec;
  bad.probabilities = {Rational(1, 2), Rational(1, 3)};
  CHECK_THROWS_AS(generate(bad), UsageError);
  bad.probabilities = {Rational(1, 1)};
  CHECK_THROWS_AS(generate(bad), UsageError);

  SymbolSeq coin = generate(parse_source_spec("bernoulli:0.5:1000:seed42"));
  uint64_t ones = 0;
  for (uint64_t i = 0; i < coin.size(); ++i) ones += coin[i];
  CHECK(ones > 400);
  CHECK(ones < 600);
}

TEST_CASE("markov sources emit the state after each transition") {
  SourceSpec spec;
  spec.kind = SourceKind::Markov;
  spec.alphabet_size = 2;
  spec.transitions = {{Rational(0, 1), Rational(1, 1)}, {Rational(1, 1), Rational(0, 1)}};
  spec.length = 6;
  // deterministic alternation: state 0 -> 1 -> 0 -> ...
  CHECK(generate(spec).data() == std::vector<uint32_t>{1, 0, 1, 0, 1, 0});

  spec.transitions = {{Rational(1, 1)}};
  CHECK_THROWS_AS(generate(spec), UsageError);
}

TEST_CASE("entropy rate covers iid and ergodic markov sources") {
  SourceSpec fair;
  fair.kind = SourceKind::Iid;
  fair.alphabet_size = 2;
  fair.probabilities = {Rational(1, 2), Rational(1, 2)};
  CHECK(entropy_rate(fair) == doctest::Approx(1.0).epsilon(1e-12));

  fair.probabilities = {Rational(1, 1), Rational(0, 1)};
  CHECK(entropy_rate(fair) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(entropy_rate(parse_source_spec("bernoulli:0.1:1")) ==
        doctest::Approx(0.4689955936).epsilon(1e-9));

  SourceSpec chain;
  chain.kind = SourceKind::Markov;
  chain.alphabet_size = 2;
  chain.transitions = {{Rational(3, 4), Rational(1, 4)}, {Rational(1, 4), Rational(3, 4)}};
  CHECK(entropy_rate(chain) == doctest::Approx(0.8112781245).epsilon(1e-9));

  // deterministic alternation is periodic but still ergodic in the mean
  chain.transitions = {{Rational(0, 1), Rational(1, 1)}, {Rational(1, 1), Rational(0, 1)}};
  CHECK(entropy_rate(chain) == doctest::Approx(0.0).epsilon(1e-9));

  // two absorbing states never mix
  chain.transitions = {{Rational(1, 1), Rational(0, 1)}, {Rational(0, 1), Rational(1, 1)}};
  CHECK_THROWS_AS(entropy_rate(chain), UsageError);

  SourceSpec constant;
  constant.kind = SourceKind::Constant;
  CHECK_THROWS_AS(entropy_rate(constant), UsageError);
  SourceSpec periodic;
  periodic.kind = SourceKind::Periodic;
  periodic.pattern = {0, 1};
  CHECK_THROWS_AS(entropy_rate(periodic), UsageError);
}

TEST_CASE("source specs parse every kind") {
  SourceSpec coin = parse_source_spec("bernoulli:0.5:1000:seed42");
  CHECK(coin.kind == SourceKind::Iid);
  CHECK(coin.alphabet_size == 2);
  CHECK(coin.probabilities == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(coin.length == 1000);
  CHECK(coin.seed == 42);

  SourceSpec biased = parse_source_spec("bernoulli:1/4:8");
  CHECK(biased.probabilities == std::vector<Rational>{Rational(3, 4), Rational(1, 4)});
  CHECK(biased.seed == 0);

  SourceSpec iid = parse_source_spec("iid:1/3,1/3,1/3:50");
  CHECK(iid.alphabet_size == 3);
  CHECK(iid.probabilities.size() == 3);

  SourceSpec markov = parse_source_spec("markov:1/2,1/2;1,0:20");
  CHECK(markov.kind == SourceKind::Markov);
  CHECK(markov.alphabet_size == 2);
  CHECK(markov.transitions[1] == std::vector<Rational>{Rational(1, 1), Rational(0, 1)});

  SourceSpec constant = parse_source_spec("constant:7:5");
  CHECK(constant.kind == SourceKind::Constant);
  CHECK(constant.alphabet_size == 7);

  SourceSpec periodic = parse_source_spec("periodic:0,1,2:9");
  CHECK(periodic.pattern == std::vector<uint32_t>{0, 1, 2});
  CHECK(periodic.alphabet_size == 3);
  CHECK(parse_source_spec("periodic:0,0:4").alphabet_size == 2);

  CHECK_THROWS_AS(parse_source_spec("bernoulli:2:10"), UsageError);
  CHECK_THROWS_AS(parse_source_spec("bogus:1:2"), UsageError);
  CHECK_THROWS_AS(parse_source_spec("bernoulli:0.5"), UsageError);
  CHECK_THROWS_AS(parse_source_spec("bernoulli:0.5:10:42"), UsageError);
  CHECK_THROWS_AS(parse_source_spec("bernoulli:0.5:10:seed42:extra"), UsageError);
  CHECK_THROWS_AS(parse_source_spec("bernoulli:0.5:abc"), UsageError);
  CHECK_THROWS_AS(parse_source_spec("iid:1/2,1/3:10"), UsageError);
  CHECK_THROWS_AS(parse_source_spec("markov:1,0;1:4"), UsageError);
  CHECK_THROWS_AS(parse_source_spec("constant:x:5"), UsageError);
}

TEST_CASE("sweeps emit reference rows and per-capacity rows") {
  SweepSpec spec;
  spec.source = parse_source_spec("bernoulli:0.5:4000:seed9");
  spec.input = generate(*spec.source);
  spec.capacities = {16, 64, 256};

  SweepResult result = run_sweep(spec);
  REQUIRE(result.rows.size() == 3);
  REQUIRE(result.entropy_reference.has_value());
  CHECK(*result.entropy_reference == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(result.lz78_reference.algorithm == "lz78");
  REQUIRE(result.csv_lines.size() == 6);  // header, lz78, entropy, 3 capacities

  size_t header_fields = split_fields(result.csv_lines[0]).size();
  CHECK(header_fields == 15);
  for (const std::string& line : result.csv_lines) {
    CHECK(split_fields(line).size() == header_fields);
  }
  CHECK(split_fields(result.csv_lines[1])[0] == "lz78");
  CHECK(split_fields(result.csv_lines[2])[0] == "source_entropy");
  auto entropy_cell = split_fields(result.csv_lines[2]);
  CHECK(entropy_cell[header_fields - 2] == "1");
  for (size_t i = 0; i < 3; ++i) {
    auto fields = split_fields(result.csv_lines[3 + i]);
    CHECK(fields[0] == "lz78lru");
    CHECK(fields[1] == std::to_string(spec.capacities[i]));
    CHECK(fields[2] == std::to_string(LruParams::default_max_len(spec.capacities[i])));
    CHECK(fields[header_fields - 2] == "1");
    CHECK(fields.back() == "recency=0");
  }

  // rows carry the reports the codec produces for each capacity
  for (size_t i = 0; i < 3; ++i) {
    LruParams params{spec.capacities[i], LruParams::default_max_len(spec.capacities[i]),
                     RecencyMode::TouchOnMatch};
    auto direct = lz78lru_encode(spec.input, params);
    CHECK(result.rows[i].payload_bits == direct.container.payload.bit_length);
  }
}

TEST_CASE("sweeps write the csv when asked") {
  SweepSpec spec;
  spec.input = generate(parse_source_spec("periodic:0,1:600"));
  spec.capacities = {4, 8};
  spec.lmax_rule = {LmaxRule::Kind::Fixed, 3};
  auto path = std::filesystem::temp_directory_path() / "fslz_sweep_unit.csv";
  spec.output_path = path.string();
  SweepResult result = run_sweep(spec);
  CHECK_FALSE(result.entropy_reference.has_value());
  CHECK(result.csv_lines.size() == 4);  // header, lz78 reference, 2 capacities

  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  CHECK(lines == result.csv_lines);
  std::filesystem::remove(path);

  auto fields = split_fields(result.csv_lines[2]);
  CHECK(fields[2] == "3");  // fixed L_max rule
  CHECK(fields[fields.size() - 2] == "");  // no entropy rate for periodic sources
}

TEST_CASE("sweep validation rejects malformed requests") {
  SweepSpec spec;
  spec.input = generate(parse_source_spec("bernoulli:0.5:100:seed1"));
  CHECK_THROWS_AS(run_sweep(spec), UsageError);  // no capacities
  spec.capacities = {16, 16};
  CHECK_THROWS_AS(run_sweep(spec), UsageError);  // not increasing
  spec.capacities = {16};
  spec.codec = AlgorithmId::LZ78;
  CHECK_THROWS_AS(run_sweep(spec), UsageError);  // needs a capacity parameter
  spec.codec = AlgorithmId::LZ78_LRU;
  spec.input = SymbolSeq(Alphabet(2));
  CHECK_THROWS_AS(run_sweep(spec), UsageError);  // empty input
}

TEST_CASE("sweeps honor codec and recency selection") {
  SweepSpec spec;
  spec.input = generate(parse_source_spec("bernoulli:0.25:2000:seed3"));
  spec.capacities = {8, 32};
  spec.codec = AlgorithmId::LZW_LRU;
  spec.recency = RecencyMode::InsertOnly;
  SweepResult result = run_sweep(spec);
  for (const CompressionReport& row : result.rows) {
    CHECK(row.algorithm == "lzwlru");
    CHECK(row.params.at("recency") == "1");
  }

  spec.codec = AlgorithmId::LZ77W;
  spec.lmax_rule = {LmaxRule::Kind::Fixed, 4};
  SweepResult windows = run_sweep(spec);
  for (size_t i = 0; i < windows.rows.size(); ++i) {
    CHECK(windows.rows[i].algorithm == "lz77w");
    CHECK(windows.rows[i].params.at("window") ==
          std::to_string(spec.capacities[i] * 4));
  }
}

TEST_CASE("constant input ratios fall with length at fixed capacity") {
  LruParams params = LruParams::with_default_max_len(16);
  double prev = 2.0;
  for (uint64_t n : {1000ull, 10000ull, 100000ull}) {
    SourceSpec spec;
    spec.kind = SourceKind::Constant;
    spec.length = n;
    auto out = lz78lru_encode(generate(spec), params);
    CompressionReport report = build_report(out.parse, out.container, {1});
    CHECK(report.actual_ratio < prev);
    prev = report.actual_ratio;
  }
  // the floor for a capped dictionary: about 6 bits per 17-symbol phrase
  CHECK(prev < 0.36);
}

TEST_CASE("deterministic alternation compresses far below one bit per symbol") {
  SourceSpec spec;
  spec.kind = SourceKind::Markov;
  spec.alphabet_size = 2;
  spec.transitions = {{Rational(0, 1), Rational(1, 1)}, {Rational(1, 1), Rational(0, 1)}};
  spec.length = 4000;
  SymbolSeq input = generate(spec);
  auto out = lz78lru_encode(input, LruParams::with_default_max_len(64));
  CompressionReport report = build_report(out.parse, out.container, {1});
  CHECK(report.actual_ratio < 0.35);  // far under the 1 bit/symbol a fair coin needs
  CHECK(entropy_rate(spec) == doctest::Approx(0.0).epsilon(1e-9));
}
