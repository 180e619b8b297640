#ifndef DARTDIFF_RNG_HPP
#define DARTDIFF_RNG_HPP

#include <cstdint>

namespace dartdiff {

// xoshiro256++ seeded through splitmix64 (Blackman & Vigna, version 1.0).
// Pinned here so fixtures are reproducible across platforms and standard
// library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& word : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in {0, ..., n-1}; n must be positive.
  uint64_t next_below(uint64_t n) {
    // Rejection-free would bias for huge n; n here is at most ~1e6.
    return static_cast<uint64_t>(next_double() * static_cast<double>(n));
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

}  // namespace dartdiff

#endif
