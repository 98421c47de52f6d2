#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fslz/types.hpp"

namespace fslz {

// A distance between equal-length symbol vectors.  Every registered
// measure must satisfy d(x;x) = 0 and superadditivity under
// concatenation: d(head) + d(tail) >= d(whole).
struct DistortionMeasure {
  std::string name;
  bool additive;        // per-symbol sum; superadditivity holds with equality
  bool zero_iff_equal;  // d(x;y) = 0 only when x = y
  std::function<Rational(std::span<const uint32_t>, std::span<const uint32_t>)> evaluate;
};

// Count of positions where the symbols differ.
Rational hamming(std::span<const uint32_t> x, std::span<const uint32_t> y);

// Sum of absolute differences of symbol indices.
Rational absolute_difference(std::span<const uint32_t> x, std::span<const uint32_t> y);

const std::vector<DistortionMeasure>& distortion_registry();
const DistortionMeasure& distortion_by_name(const std::string& name);

}  // namespace fslz
