#pragma once

#include <cstdint>

#include "inhomog/rational.hpp"

namespace inhomog {

// splitmix64, used only to stretch seeds.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

// xoshiro256**. Value streams depend only on (seed, stream), never on thread
// scheduling, so seeded runs are reproducible at any thread count.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed, std::uint64_t stream = 0) {
    SplitMix64 sm{seed ^ (stream * 0x9e3779b97f4a7c15ull + 0x243f6a8885a308d3ull)};
    for (auto& w : s_) w = sm.next();
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

  // Exact point of the 2^64 grid on [0, 1).
  Rational next_unit_rational() {
    Rational q(BigInt(next()), BigInt(1));
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den().get_mpz_t(), 64);
    q.canonicalize();
    return q;
  }

  double next_unit_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

}  // namespace inhomog
