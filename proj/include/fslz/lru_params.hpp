#pragma once

#include <algorithm>
#include <cstdint>

#include "fslz/types.hpp"

namespace fslz {

// How a bounded dictionary refreshes recency.  TouchOnMatch additionally
// refreshes an entry whenever it serves as the longest match; InsertOnly
// refreshes only on insertion.
enum class RecencyMode : uint8_t {
  TouchOnMatch = 0,
  InsertOnly = 1,
};

// Parameters shared by the bounded-dictionary codecs: dictionary capacity
// D, maximum stored phrase length, and the recency policy.
struct LruParams {
  uint64_t capacity = 0;  // D
  uint64_t max_len = 0;   // L_max
  RecencyMode recency = RecencyMode::TouchOnMatch;

  // Default cap: square of the capacity's bit size, at least 1.
  static uint64_t default_max_len(uint64_t capacity) {
    uint64_t b = ceil_log2(capacity);
    return std::max<uint64_t>(1, b * b);
  }

  static LruParams with_default_max_len(uint64_t capacity,
                                        RecencyMode recency = RecencyMode::TouchOnMatch) {
    return LruParams{capacity, default_max_len(capacity), recency};
  }
};

}  // namespace fslz
