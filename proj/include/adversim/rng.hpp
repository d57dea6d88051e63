#pragma once

#include <cmath>
#include <cstdint>

namespace adversim {

// splitmix64, used for seed derivation and generator initialization.
struct SplitMix64 {
  uint64_t state;
  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

// xoshiro256++ with a fixed, documented draw discipline: every helper below
// consumes a fixed number of raw 64-bit words, so replay is exact.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& w : s_) w = sm.next();
  }

  // Derivation used for per-replicate / per-sample generators:
  // derive(master, i) = splitmix64(splitmix64(master ^ (i+1)*GOLDEN)).
  static uint64_t derive(uint64_t master, uint64_t index) {
    SplitMix64 sm{master ^ ((index + 1) * 0x9E3779B97F4A7C15ull)};
    sm.next();
    return sm.next();
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

  // [0,1), 53-bit resolution; one word.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // [0,n); one word.
  uint64_t uniform_index(uint64_t n) { return n ? next_u64() % n : 0; }

  int rademacher() { return (next_u64() & 1ull) ? +1 : -1; }

  // Box-Muller; always consumes exactly two words, spare discarded.
  double normal() {
    double u1 = uniform01(), u2 = uniform01();
    if (u1 <= 0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

}  // namespace adversim
