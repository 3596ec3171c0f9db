#pragma once

// xoshiro256** seeded through splitmix64 (Blackman & Vigna reference
// algorithms). Streams are fully specified by the 64-bit key, so other
// implementations can regenerate identical draws.

#include <bit>
#include <cmath>
#include <cstdint>

namespace nomafbl {

inline constexpr const char* kRngAlgorithm = "xoshiro256**/splitmix64";

class SplitMix64 {
public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

class Xoshiro256StarStar {
public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256StarStar(std::uint64_t key) {
    SplitMix64 sm(key);
    for (auto& s : s_)
      s = sm.next();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Unit-mean exponential by inversion.
  double exponential() { return -std::log1p(-uniform()); }

private:
  std::uint64_t s_[4]{};
};

/// Key of the sub-stream used for trial chunk `chunk` of a run seeded `seed`.
constexpr std::uint64_t substream_key(std::uint64_t seed, std::uint64_t chunk) {
  return seed ^ (0xD1B54A32D192ED03ull * (chunk + 1));
}

} // namespace nomafbl
