#pragma once

#include <cstdint>

#include "ppp/bigint.hpp"

namespace ppp {

// xoshiro256** seeded through splitmix64. Self-contained so that seeded runs
// produce identical streams on every platform; std::mt19937 distributions are
// not portable across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, bound), bound > 0, unbiased by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw Error("Rng::below: zero bound");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  bool coin() { return (next() >> 63) != 0; }

  Int below_int(const Int& bound) {
    if (bound <= 0) throw Error("Rng::below_int: nonpositive bound");
    const int bits = bit_width_int(bound - 1);
    Int v;
    do {
      v = 0;
      for (int taken = 0; taken < bits; taken += 64) {
        v <<= 64;
        v |= Int(next());
      }
      v >>= (bits + 63) / 64 * 64 - bits;
    } while (v >= bound);
    return v;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
};

}  // namespace ppp
