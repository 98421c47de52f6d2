#include "fslz/sources.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fslz {

namespace {

void check_distribution(const std::vector<Rational>& probs, uint32_t size,
                        const char* what) {
  if (probs.size() != size) {
    throw UsageError(std::string(what) + " must have one entry per symbol");
  }
  Rational sum(0, 1);
  for (const Rational& p : probs) sum = sum + p;
  if (!(sum == Rational(1, 1))) {
    throw UsageError(std::string(what) + " must sum to 1");
  }
}

void validate(const SourceSpec& spec) {
  if (spec.alphabet_size < 2) throw UsageError("alphabet size must be at least 2");
  switch (spec.kind) {
    case SourceKind::Iid:
      check_distribution(spec.probabilities, spec.alphabet_size, "probabilities");
      break;
    case SourceKind::Markov:
      if (spec.transitions.size() != spec.alphabet_size) {
        throw UsageError("transition matrix must have one row per symbol");
      }
      for (const auto& row : spec.transitions) {
        check_distribution(row, spec.alphabet_size, "transition row");
      }
      break;
    case SourceKind::Constant:
      break;
    case SourceKind::Periodic:
      if (spec.pattern.empty()) throw UsageError("periodic pattern must be nonempty");
      for (uint32_t s : spec.pattern) {
        if (s >= spec.alphabet_size) throw UsageError("pattern symbol out of range");
      }
      break;
  }
}

// Uniform double in [0,1) from the generator's top 53 bits.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

uint32_t sample(const std::vector<double>& cumulative, double u) {
  // smallest index whose cumulative weight exceeds u
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  return static_cast<uint32_t>(it - cumulative.begin());
}

std::vector<double> cumulative_of(const std::vector<Rational>& probs) {
  std::vector<double> cum;
  cum.reserve(probs.size());
  double acc = 0.0;
  for (const Rational& p : probs) {
    acc += p.to_double();
    cum.push_back(acc);
  }
  cum.back() = 1.0;
  return cum;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

uint64_t parse_u64(const std::string& text, const char* what) {
  try {
    size_t used = 0;
    uint64_t v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + ": " + text);
  }
}

std::vector<Rational> parse_prob_list(const std::string& text) {
  std::vector<Rational> probs;
  for (const std::string& part : split(text, ',')) probs.push_back(parse_rational(part));
  return probs;
}

}  // namespace

SymbolSeq generate(const SourceSpec& spec) {
  validate(spec);
  std::vector<uint32_t> data;
  data.reserve(spec.length);
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case SourceKind::Iid: {
      std::vector<double> cum = cumulative_of(spec.probabilities);
      for (uint64_t i = 0; i < spec.length; ++i) data.push_back(sample(cum, next_uniform(rng)));
      break;
    }
    case SourceKind::Markov: {
      std::vector<std::vector<double>> rows;
      for (const auto& row : spec.transitions) rows.push_back(cumulative_of(row));
      uint32_t state = 0;
      for (uint64_t i = 0; i < spec.length; ++i) {
        state = sample(rows[state], next_uniform(rng));
        data.push_back(state);
      }
      break;
    }
    case SourceKind::Constant:
      data.assign(spec.length, 0);
      break;
    case SourceKind::Periodic:
      for (uint64_t i = 0; i < spec.length; ++i) {
        data.push_back(spec.pattern[i % spec.pattern.size()]);
      }
      break;
  }
  return SymbolSeq(Alphabet(spec.alphabet_size), std::move(data));
}

double entropy_rate(const SourceSpec& spec) {
  validate(spec);
  auto entropy_of = [](const std::vector<Rational>& probs) {
    double h = 0.0;
    for (const Rational& p : probs) {
      double v = p.to_double();
      if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
  };
  if (spec.kind == SourceKind::Iid) return entropy_of(spec.probabilities);
  if (spec.kind != SourceKind::Markov) {
    throw UsageError("entropy rate defined only for iid and markov sources");
  }
  const uint32_t A = spec.alphabet_size;
  // irreducibility: every state reaches every other along positive-
  // probability edges, in both directions
  auto reaches_all = [&](bool reverse) {
    std::vector<uint8_t> seen(A, 0);
    std::vector<uint32_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      uint32_t u = stack.back();
      stack.pop_back();
      for (uint32_t v = 0; v < A; ++v) {
        const Rational& p = reverse ? spec.transitions[v][u] : spec.transitions[u][v];
        if (p.num > 0 && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](uint8_t b) { return b != 0; });
  };
  if (!reaches_all(false) || !reaches_all(true)) {
    throw UsageError("non-ergodic chain: no unique stationary distribution");
  }
  // damped power iteration pi <- pi (P + I)/2; damping removes
  // periodicity without moving the fixed point
  std::vector<double> pi(A, 1.0 / A), next(A);
  for (int iter = 0; iter < 100000; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (uint32_t i = 0; i < A; ++i) {
      next[i] += 0.5 * pi[i];
      for (uint32_t j = 0; j < A; ++j) {
        next[j] += 0.5 * pi[i] * spec.transitions[i][j].to_double();
      }
    }
    double diff = 0.0;
    for (uint32_t i = 0; i < A; ++i) diff += std::abs(next[i] - pi[i]);
    pi.swap(next);
    if (diff < 1e-12) {
      double h = 0.0;
      for (uint32_t i = 0; i < A; ++i) h += pi[i] * entropy_of(spec.transitions[i]);
      return h;
    }
  }
  throw Error("stationary distribution did not converge");
}

SourceSpec parse_source_spec(const std::string& text) {
  std::vector<std::string> parts = split(text, ':');
  if (parts.size() < 3) throw UsageError("source spec needs kind:args:length");
  SourceSpec spec;
  const std::string& kind = parts[0];
  const std::string& args = parts[1];
  spec.length = parse_u64(parts[2], "source length");
  if (parts.size() >= 4) {
    const std::string& s = parts[3];
    if (s.rfind("seed", 0) != 0) throw UsageError("seed field must look like seed42");
    spec.seed = parse_u64(s.substr(4), "seed");
  }
  if (parts.size() > 4) throw UsageError("too many fields in source spec");
  if (kind == "bernoulli") {
    Rational p = parse_rational(args);
    if (Rational(1, 1) < p) throw UsageError("bernoulli parameter must be at most 1");
    spec.kind = SourceKind::Iid;
    spec.alphabet_size = 2;
    spec.probabilities = {Rational(p.den - p.num, p.den), p};
  } else if (kind == "iid") {
    spec.kind = SourceKind::Iid;
    spec.probabilities = parse_prob_list(args);
    spec.alphabet_size = static_cast<uint32_t>(spec.probabilities.size());
  } else if (kind == "markov") {
    spec.kind = SourceKind::Markov;
    for (const std::string& row : split(args, ';')) {
      spec.transitions.push_back(parse_prob_list(row));
    }
    spec.alphabet_size = static_cast<uint32_t>(spec.transitions.size());
  } else if (kind == "constant") {
    spec.kind = SourceKind::Constant;
    spec.alphabet_size = static_cast<uint32_t>(parse_u64(args, "alphabet size"));
  } else if (kind == "periodic") {
    spec.kind = SourceKind::Periodic;
    uint32_t max_sym = 0;
    for (const std::string& part : split(args, ',')) {
      uint32_t s = static_cast<uint32_t>(parse_u64(part, "pattern symbol"));
      spec.pattern.push_back(s);
      max_sym = std::max(max_sym, s);
    }
    spec.alphabet_size = std::max<uint32_t>(2, max_sym + 1);
  } else {
    throw UsageError("unknown source kind: " + kind);
  }
  validate(spec);
  return spec;
}

}  // namespace fslz
