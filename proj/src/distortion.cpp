#include "fslz/distortion.hpp"

#include <cstdlib>

namespace fslz {

namespace {

void check_lengths(std::span<const uint32_t> x, std::span<const uint32_t> y) {
  if (x.size() != y.size()) throw UsageError("distortion requires equal lengths");
}

}  // namespace

Rational hamming(std::span<const uint32_t> x, std::span<const uint32_t> y) {
  check_lengths(x, y);
  int64_t d = 0;
  for (size_t i = 0; i < x.size(); ++i) d += x[i] != y[i];
  return Rational(d, 1);
}

Rational absolute_difference(std::span<const uint32_t> x, std::span<const uint32_t> y) {
  check_lengths(x, y);
  int64_t d = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    d += std::abs(static_cast<int64_t>(x[i]) - static_cast<int64_t>(y[i]));
  }
  return Rational(d, 1);
}

const std::vector<DistortionMeasure>& distortion_registry() {
  static const std::vector<DistortionMeasure> registry = {
      {"hamming", true, true, hamming},
      {"absdiff", true, true, absolute_difference},
  };
  return registry;
}

const DistortionMeasure& distortion_by_name(const std::string& name) {
  for (const DistortionMeasure& m : distortion_registry()) {
    if (m.name == name) return m;
  }
  throw UsageError("unknown distortion measure: " + name);
}

}  // namespace fslz
