#pragma once

#include <cstdint>

namespace mugen {

// SplitMix64. The whole generator state is one 64-bit word, so it can be
// stored in simulation state and serialized. Output is identical on every
// platform, unlike the <random> distributions.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state = 0) : state_(state) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). Lemire's multiply-shift; the bias is below
  // 2^-32 for every bound used here.
  std::uint32_t bounded(std::uint32_t bound) {
    return static_cast<std::uint32_t>(((next() >> 32) * bound) >> 32);
  }

  // Uniform integer in [lo, hi].
  int range(int lo, int hi) { return lo + static_cast<int>(bounded(static_cast<std::uint32_t>(hi - lo + 1))); }

  constexpr std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// Stateless 64-bit mixer for deriving sub-seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDULL;
  x ^= x >> 33;
  x *= 0xC4CEB9FE1A85EC53ULL;
  x ^= x >> 33;
  return x;
}

}  // namespace mugen
