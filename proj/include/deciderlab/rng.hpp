#pragma once

// SplitMix64: tiny, fully specified generator for seeded sampling. Standard
// library distributions are implementation-defined, which would break the
// byte-identical-outputs guarantee across toolchains.

#include <cstdint>
#include <string>

namespace deciderlab {

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform-enough value in [0, bound) via fixed-point multiply; bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(next()) * bound) >> 64);
  }

  std::string bit_string(std::uint64_t length) {
    std::string bits(length, '0');
    for (char& c : bits) {
      if (next() & 1u) c = '1';
    }
    return bits;
  }
};

}  // namespace deciderlab
