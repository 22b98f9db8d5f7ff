// Splittable PRNG (splitmix64 core). Child streams derive from (seed, tag)
// only, never from consumption state, so stream structure is stable no matter
// how work is partitioned.
#pragma once

#include <cstdint>

namespace wompolar {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // uniform in [0, 1) with 53 random bits
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  int next_bit(double p1) { return next_double() < p1 ? 1 : 0; }

  Rng derive(std::uint64_t tag) const { return Rng(mix64(seed_ ^ mix64(tag + kGolden))); }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace wompolar
