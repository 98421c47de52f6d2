#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fslz/fsdl.hpp"
#include "helpers.hpp"

using namespace fslz;
using fslz::test::random_seq;

namespace {

using Blocks = std::vector<std::vector<uint32_t>>;

QuantizerConfig block_config(uint64_t block_len, Rational budget) {
  QuantizerConfig cfg;
  cfg.block_len = block_len;
  cfg.budget = budget;
  return cfg;
}

SymbolSeq decode_roundtrip(const Container& c) {
  return fsdl_decode(read_container(write_container(c)));
}

}  // namespace

TEST_CASE("pipeline bound evaluates the pinned examples") {
  // two equiprobable length-2 values over 4 blocks (N = 8 symbols)
  Blocks two = {{0, 0}, {1, 1}, {0, 0}, {1, 1}};
  BoundValue distinct = fsld_lower_bound(two, {1}, 2, BlockEntropyReading::DistinctValues);
  CHECK(distinct.value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(distinct.slack == doctest::Approx(0.5).epsilon(1e-12));
  BoundValue per_occ = fsld_lower_bound(two, {1}, 2, BlockEntropyReading::PerOccurrence);
  CHECK(per_occ.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fsld_lower_bound(two, {2}, 2).value == doctest::Approx(0.25 - 1.0).epsilon(1e-12));

  // identical blocks: the entropy sum vanishes, leaving only the state term
  Blocks same = {{1, 0}, {1, 0}, {1, 0}, {1, 0}};
  CHECK(fsld_lower_bound(same, {1}, 2).value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fsld_lower_bound(same, {2}, 2).value == doctest::Approx(-1.0).epsilon(1e-12));

  CHECK_THROWS_AS(fsld_lower_bound({}, {1}, 2), UsageError);
  CHECK_THROWS_AS(fsld_lower_bound(two, {0}, 2), UsageError);
  CHECK_THROWS_AS(fsld_lower_bound({{0, 1}, {0}}, {1}, 2), UsageError);
}

TEST_CASE("distinct-value reading never exceeds the per-occurrence reading") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 100; ++rep) {
    uint64_t L = 1 + rng() % 4;
    uint64_t count = 1 + rng() % 40;
    Blocks blocks;
    for (uint64_t i = 0; i < count; ++i) {
      SymbolSeq b = random_seq(rng, 2, L);
      blocks.push_back(b.data());
    }
    double distinct =
        fsld_lower_bound(blocks, {1}, 2, BlockEntropyReading::DistinctValues).value;
    double per_occ =
        fsld_lower_bound(blocks, {1}, 2, BlockEntropyReading::PerOccurrence).value;
    CHECK(distinct <= per_occ + 1e-12);
  }
}

TEST_CASE("capacity coupling follows the cubic rule") {
  CHECK(coupled_capacity(1) == 2);
  CHECK(coupled_capacity(2) == 256);
  CHECK(coupled_capacity(3) == (1ull << 27));
  CHECK_THROWS_AS(coupled_capacity(4), UsageError);
  CHECK(coupled_min_window(2) == 2);
  CHECK(coupled_min_window(256) == 2048);
}

TEST_CASE("zero distortion budget reproduces the input") {
  std::mt19937_64 rng(42);
  for (uint64_t block_len : {1ull, 2ull, 3ull}) {
    for (int rep = 0; rep < 5; ++rep) {
      SymbolSeq input = random_seq(rng, 2, rng() % 200);  // tails included
      auto result = fsdl_encode(input, block_config(block_len, Rational(0, 1)),
                                {8, 4, RecencyMode::TouchOnMatch});
      CHECK(result.quantized == input);
      CHECK(decode_roundtrip(result.container) == input);
    }
  }
}

TEST_CASE("pipeline emits the quantized sequence") {
  SymbolSeq input(Alphabet(2), {0, 0, 0, 1, 1, 1, 0, 0});  // 00 01 11 00
  auto result = fsdl_encode(input, block_config(2, Rational(1, 2)),
                            {4, 2, RecencyMode::TouchOnMatch});
  SymbolSeq expected(Alphabet(2), {0, 1, 0, 1, 0, 1, 0, 1});
  CHECK(result.quantized == expected);
  CHECK(decode_roundtrip(result.container) == expected);

  // the id stream 0,0,0,0 parses as [0], [0,0], [0]
  REQUIRE(result.parse.phrases.size() == 3);
  CHECK(result.parse.phrases[0].symbols == std::vector<uint32_t>{0});
  CHECK(result.parse.phrases[1].symbols == std::vector<uint32_t>{0, 0});
  CHECK(result.parse.phrases[2].symbols == std::vector<uint32_t>{0});
  CHECK(result.parse.codewords[2].match_ref == 1);
  CHECK_FALSE(result.parse.codewords[2].extension.has_value());
  // two slot+block codewords and one bare slot reference
  CHECK(result.container.payload.bit_length == (3 + 2) + (3 + 2) + 3);
}

TEST_CASE("decoded output stays within the per-block budget") {
  std::mt19937_64 rng(43);
  const uint64_t L = 4;
  for (int rep = 0; rep < 8; ++rep) {
    SymbolSeq input = random_seq(rng, 2, 3 + rng() % 400);
    auto result = fsdl_encode(input, block_config(L, Rational(1, 4)),
                              {16, 6, RecencyMode::TouchOnMatch});
    SymbolSeq decoded = decode_roundtrip(result.container);
    CHECK(decoded == result.quantized);
    REQUIRE(decoded.size() == input.size());
    uint64_t n_blocks = input.size() / L;
    for (uint64_t b = 0; b < n_blocks; ++b) {
      Rational d = hamming(input.view().subspan(b * L, L), decoded.view().subspan(b * L, L));
      CHECK(d <= Rational(1, 1));
    }
    for (uint64_t i = n_blocks * L; i < input.size(); ++i) {
      CHECK(decoded[i] == input[i]);  // literal tail
    }
  }
}

TEST_CASE("inputs shorter than one block pass through") {
  SymbolSeq tiny(Alphabet(2), {1});
  auto result = fsdl_encode(tiny, block_config(2, Rational(1, 2)),
                            {4, 2, RecencyMode::TouchOnMatch});
  CHECK(result.parse.total_phrases() == 0);
  CHECK(result.quantized == tiny);
  CHECK(result.container.payload.bit_length == 1);
  CHECK(decode_roundtrip(result.container) == tiny);

  auto empty = fsdl_encode(SymbolSeq(Alphabet(2)), block_config(2, Rational(0, 1)),
                           {4, 2, RecencyMode::TouchOnMatch});
  CHECK(decode_roundtrip(empty.container) == SymbolSeq(Alphabet(2)));
}

TEST_CASE("pipeline container carries the full parameter set") {
  std::mt19937_64 rng(44);
  SymbolSeq input = random_seq(rng, 2, 64);
  auto result = fsdl_encode(input, block_config(2, Rational(2, 4)),
                            {8, 3, RecencyMode::InsertOnly});
  const Container& c = result.container;
  CHECK(c.algorithm == AlgorithmId::FSDL);
  CHECK(c.param(ParamTag::D) == 8);
  CHECK(c.param(ParamTag::L_MAX) == 3);
  CHECK(c.param(ParamTag::L) == 2);
  CHECK(c.param(ParamTag::D_MAX_NUM) == 1);  // 2/4 normalizes
  CHECK(c.param(ParamTag::D_MAX_DEN) == 2);
  CHECK(c.param(ParamTag::RECENCY) == 1);
  CHECK(decode_container(read_container(write_container(c))) == result.quantized);
}

TEST_CASE("pipeline report ties to the parse and bound") {
  std::mt19937_64 rng(45);
  SymbolSeq input = random_seq(rng, 2, 600);
  const uint64_t L = 3;
  auto result = fsdl_encode(input, block_config(L, Rational(1, 3)),
                            {16, 4, RecencyMode::TouchOnMatch});
  const CompressionReport& report = result.report;
  CHECK(report.algorithm == "fsdl");
  CHECK(report.n == 600);
  CHECK(report.c == result.parse.total_phrases());
  CHECK(report.payload_bits == result.container.payload.bit_length);
  CHECK(report.actual_ratio ==
        doctest::Approx(static_cast<double>(report.payload_bits) / 600.0).epsilon(1e-12));
  double expected_nominal = static_cast<double>(report.c) *
                            (std::log2(16.0) + 1.0 + static_cast<double>(L)) / 600.0;
  CHECK(report.nominal_ratio == doctest::Approx(expected_nominal).epsilon(1e-12));

  Blocks blocks;
  for (uint64_t i = 0; i < 600 / L; ++i) {
    blocks.push_back(result.codebook.centers[result.codebook.assignments[i]]);
  }
  BoundValue expect = fsld_lower_bound(blocks, {1}, 2);
  REQUIRE(report.bounds.size() == 1);
  CHECK(report.bounds[0].first == 1);
  CHECK(report.bounds[0].second == doctest::Approx(expect.value).epsilon(1e-12));
  CHECK(report.bound_slack == doctest::Approx(expect.slack).epsilon(1e-12));
  CHECK(report.params.at("d_max") == "1/3");
  CHECK(report.params.at("L") == "3");
}

TEST_CASE("pipeline validates parameters on both sides") {
  SymbolSeq input(Alphabet(2), {0, 1, 0, 1});
  QuantizerConfig cfg = block_config(2, Rational(0, 1));
  CHECK_THROWS_AS(fsdl_encode(input, cfg, {0, 2, RecencyMode::TouchOnMatch}), UsageError);
  CHECK_THROWS_AS(fsdl_encode(input, cfg, {4, 0, RecencyMode::TouchOnMatch}), UsageError);

  auto good = fsdl_encode(input, cfg, {4, 2, RecencyMode::TouchOnMatch});
  Container zero_block = good.container;
  zero_block.params[ParamTag::L] = 0;
  CHECK_THROWS_AS(fsdl_decode(zero_block), FormatError);
  Container bad_mode = good.container;
  bad_mode.params[ParamTag::RECENCY] = 2;
  CHECK_THROWS_AS(fsdl_decode(bad_mode), FormatError);
  CHECK_THROWS_AS(fsdl_decode(lz78_encode(input).container), UsageError);
}

TEST_CASE("pipeline decode rejects corrupt payloads") {
  std::map<ParamTag, uint64_t> params = {
      {ParamTag::D, 2},        {ParamTag::L_MAX, 1},   {ParamTag::L, 1},
      {ParamTag::D_MAX_NUM, 0}, {ParamTag::D_MAX_DEN, 1}, {ParamTag::RECENCY, 0}};

  auto make = [&](uint32_t alphabet, uint64_t n, std::initializer_list<uint32_t> bits) {
    BitWriter w;
    for (uint32_t b : bits) w.put_bit(b);
    Container c;
    c.algorithm = AlgorithmId::FSDL;
    c.alphabet_size = alphabet;
    c.original_length = n;
    c.params = params;
    c.payload = std::move(w).finish();
    return c;
  };

  CHECK_THROWS_WITH_AS(fsdl_decode(make(2, 1, {0, 1})), "reference to inactive slot",
                       DecodeError);
  CHECK_THROWS_WITH_AS(fsdl_decode(make(2, 1, {1, 1})), "slot out of range", DecodeError);
  CHECK_THROWS_WITH_AS(fsdl_decode(make(3, 1, {0, 0, 1, 1})), "symbol out of range",
                       DecodeError);

  SymbolSeq input(Alphabet(2), {0, 1, 1, 0});
  auto good = fsdl_encode(input, block_config(2, Rational(0, 1)),
                          {2, 2, RecencyMode::TouchOnMatch});
  Container padded = good.container;
  padded.payload.bit_length += 2;
  CHECK_THROWS_WITH_AS(fsdl_decode(padded), "trailing payload bits", DecodeError);
}

TEST_CASE("pipeline round trips across parameter grids") {
  std::mt19937_64 rng(46);
  for (RecencyMode mode : {RecencyMode::TouchOnMatch, RecencyMode::InsertOnly}) {
    for (uint64_t L : {1ull, 2ull, 4ull}) {
      for (uint64_t capacity : {1ull, 2ull, 16ull}) {
        SymbolSeq input = random_seq(rng, 2, rng() % 500);
        auto result = fsdl_encode(input, block_config(L, Rational(1, 2)),
                                  {capacity, 3, mode});
        CAPTURE(L);
        CAPTURE(capacity);
        CHECK(decode_roundtrip(result.container) == result.quantized);
        CHECK(result.quantized.size() == input.size());
      }
    }
  }
}
