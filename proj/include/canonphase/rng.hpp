#pragma once

#include <cstdint>
#include <limits>

namespace canonphase {

/// SplitMix64 (Steele, Lea, Flood 2014). Output k is a fixed mix of
/// seed + (k + 1) * golden_gamma, so a stream is fully determined by its seed.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  static constexpr const char* kAlgorithm = "splitmix64";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace canonphase
