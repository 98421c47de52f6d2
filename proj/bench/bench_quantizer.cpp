// Times the serial coverage kernel against the OpenMP one on identical
// inputs and verifies they produce the same counts.  Not a ctest; run the
// binary directly.
#include <chrono>
#include <cstdio>
#include <random>

#include "fslz/quantizer.hpp"

using namespace fslz;

namespace {

BlockArray random_blocks(std::mt19937_64& rng, uint64_t count, uint64_t block_len,
                         uint32_t alphabet_size) {
  BlockArray blocks;
  blocks.block_len = block_len;
  blocks.data.resize(count * block_len);
  for (auto& s : blocks.data) s = static_cast<uint32_t>(rng() % alphabet_size);
  return blocks;
}

double time_kernel(const char* name,
                   std::vector<uint64_t> (*kernel)(const BlockArray&, const BlockArray&,
                                                   const std::vector<uint8_t>&,
                                                   const QuantizerConfig&),
                   const BlockArray& candidates, const BlockArray& blocks,
                   const std::vector<uint8_t>& covered, const QuantizerConfig& cfg,
                   std::vector<uint64_t>& out) {
  auto start = std::chrono::steady_clock::now();
  out = kernel(candidates, blocks, covered, cfg);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("  %-8s %8.3f ms\n", name, seconds * 1e3);
  return seconds;
}

}  // namespace

int main() {
  std::mt19937_64 rng(1);
  bool all_equal = true;
  for (uint64_t block_len : {4, 8, 16}) {
    for (uint64_t scale : {1, 4}) {
      const uint64_t n_candidates = 400 * scale;
      const uint64_t n_blocks = 2000 * scale;
      BlockArray candidates = random_blocks(rng, n_candidates, block_len, 4);
      BlockArray blocks = random_blocks(rng, n_blocks, block_len, 4);
      std::vector<uint8_t> covered(n_blocks, 0);
      for (auto& c : covered) c = rng() % 4 == 0;
      QuantizerConfig cfg;
      cfg.block_len = block_len;
      cfg.budget = Rational(1, 2);

      std::printf("L=%llu, %llu candidates x %llu blocks:\n",
                  static_cast<unsigned long long>(block_len),
                  static_cast<unsigned long long>(n_candidates),
                  static_cast<unsigned long long>(n_blocks));
      std::vector<uint64_t> serial, parallel;
      double ts = time_kernel("serial", coverage_counts_serial, candidates, blocks, covered,
                              cfg, serial);
      double tp = time_kernel("parallel", coverage_counts_parallel, candidates, blocks,
                              covered, cfg, parallel);
      bool equal = serial == parallel;
      all_equal = all_equal && equal;
      std::printf("  speedup %5.2fx, counts %s\n", ts / tp,
                  equal ? "identical" : "DIFFER");
    }
  }
  if (!all_equal) {
    std::printf("kernel outputs differ\n");
    return 1;
  }
  return 0;
}
