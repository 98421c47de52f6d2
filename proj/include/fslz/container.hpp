#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fslz/bitstream.hpp"
#include "fslz/types.hpp"

namespace fslz {

enum class AlgorithmId : uint8_t {
  LZ78 = 0,
  LZ78_LRU = 1,
  LZW = 2,
  LZW_LRU = 3,
  LZ77W = 4,
  FSDL = 5,
};

const char* algorithm_name(AlgorithmId id);
std::optional<AlgorithmId> algorithm_from_name(const std::string& name);

// Parameter tags used in the container's parameter block.
enum class ParamTag : uint8_t {
  D = 1,
  L_MAX = 2,
  L = 3,
  D_MAX_NUM = 4,
  D_MAX_DEN = 5,
  WINDOW = 6,
  RECENCY = 7,
};

// On-disk container shared by every codec.
//
// Byte layout (all integers unsigned big-endian):
//   magic[4] = "FSLZ" | version u8 (=1) | algorithm_id u8 |
//   alphabet_size u32 | original_length u64 | param_count u8 |
//   param_count x (param_tag u8, param_value u64) |
//   payload_bit_length u64 | payload bytes (final byte zero padded)
struct Container {
  static constexpr uint8_t kMagic[4] = {0x46, 0x53, 0x4C, 0x5A};
  static constexpr uint8_t kVersion = 1;

  AlgorithmId algorithm = AlgorithmId::LZ78;
  uint32_t alphabet_size = 2;
  uint64_t original_length = 0;
  std::map<ParamTag, uint64_t> params;
  BitStream payload;

  uint64_t param(ParamTag tag) const;
  bool operator==(const Container&) const = default;
};

// Serializes with a deterministic layout: identical containers produce
// identical bytes. Throws FormatError when the parameter block does not
// match the algorithm's required tag set.
std::vector<uint8_t> write_container(const Container& container);

// Exact inverse of write_container. Distinct errors for bad magic,
// unknown version, and truncation.
Container read_container(std::span<const uint8_t> bytes);

}  // namespace fslz
