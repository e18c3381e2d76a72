#pragma once

#include <cstdint>

namespace vecpack {

// SplitMix64 finalizer; a bijective mix of one 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based stream: draw(k) depends only on (key, k).
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key) : key_(mix64(key)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return mix64(key_ ^ mix64(counter));
  }
  // Uniform on [0,1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }
  constexpr CounterRng derive(std::uint64_t salt) const { return CounterRng(bits(salt)); }

 private:
  std::uint64_t key_;
};

}  // namespace vecpack
