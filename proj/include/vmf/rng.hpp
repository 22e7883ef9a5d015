#pragma once

#include <cmath>
#include <cstdint>

#include "vmf/vec3.hpp"

namespace vmf {

// Counter-based sample stream: every draw is a pure function of (seed, counter, slot),
// so sample i is the same number no matter how work is scheduled across threads.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : seed_(seed) {}

  double uniform(std::uint64_t counter, std::uint64_t slot) const {
    return to_unit(mix(counter, slot));
  }

  // in (0,1]: safe as log/denominator argument
  double uniform_pos(std::uint64_t counter, std::uint64_t slot) const {
    return 1.0 - uniform(counter, slot) * (1.0 - 0x1p-53);
  }

  Vec3 unit_vector(std::uint64_t counter, std::uint64_t slot0) const {
    double z = 2.0 * uniform(counter, slot0) - 1.0;
    double phi = 6.283185307179586477 * uniform(counter, slot0 + 1);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
  }

  double log_uniform(std::uint64_t counter, std::uint64_t slot, double lo, double hi) const {
    return lo * std::exp(uniform(counter, slot) * std::log(hi / lo));
  }

 private:
  static std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t mix(std::uint64_t counter, std::uint64_t slot) const {
    return splitmix(splitmix(seed_ ^ (counter * 0xD1342543DE82EF95ULL)) + slot);
  }

  static double to_unit(std::uint64_t u) { return (u >> 11) * 0x1p-53; }

  std::uint64_t seed_;
};

}  // namespace vmf
