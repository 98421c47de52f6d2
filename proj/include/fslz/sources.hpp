#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fslz/types.hpp"

namespace fslz {

enum class SourceKind : uint8_t {
  Iid,
  Markov,
  Constant,
  Periodic,
};

// A reproducible synthetic source.  Probabilities are exact rationals;
// sampling is documented in the README (mt19937_64, top-53-bit uniform
// doubles, inverse CDF) so sequences reproduce across implementations.
struct SourceSpec {
  SourceKind kind = SourceKind::Constant;
  uint32_t alphabet_size = 2;
  std::vector<Rational> probabilities;             // IID: one entry per symbol
  std::vector<std::vector<Rational>> transitions;  // MARKOV: row-stochastic matrix
  std::vector<uint32_t> pattern;                   // PERIODIC: repeated cyclically
  uint64_t length = 0;
  uint64_t seed = 0;
};

// Deterministic generation.  A MARKOV source starts in state 0 and emits
// the state reached after each transition.
SymbolSeq generate(const SourceSpec& spec);

// Bits per symbol.  IID: Shannon entropy of the distribution.  MARKOV:
// entropy rate under the stationary distribution, found by damped power
// iteration to 1e-12; requires an irreducible chain.  Other kinds are
// rejected.
double entropy_rate(const SourceSpec& spec);

// Parses "kind:args:length[:seed<k>]" strings:
//   bernoulli:<p>:<n>         iid:<p0,p1,...>:<n>
//   markov:<row;row;...>:<n>  constant:<A>:<n>     periodic:<s0,s1,...>:<n>
// Probabilities accept "1/4", "0.25", or integers; seed defaults to 0.
SourceSpec parse_source_spec(const std::string& text);

}  // namespace fslz
