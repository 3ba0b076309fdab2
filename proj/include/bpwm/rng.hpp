#pragma once

#include <cstdint>

namespace bpwm {

// SplitMix64 (Steele, Lea & Vigna; the java.util.SplittableRandom mixer).
// The toolkit's one pseudorandom source: pure 64-bit integer arithmetic,
// so the same seed yields the same stream on every platform.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Fair coin from the top bit.
  constexpr bool next_bit() { return (next() >> 63) != 0; }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace bpwm
