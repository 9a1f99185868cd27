#pragma once

#include <cstdint>

namespace docsynth {

// Deterministic 64-bit generator (splitmix64). Used everywhere a seeded
// stream is needed so that outputs are bit-identical across platforms and
// standard-library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be > 0.
  uint64_t next_below(uint64_t n) { return next_u64() % n; }

  // Uniform float in [-range, range].
  float next_symmetric(float range) {
    return static_cast<float>((next_double() * 2.0 - 1.0) * range);
  }

 private:
  uint64_t state_;
};

// Stateless mix for deriving independent stream seeds from a master seed
// and an index (document number, page number, ...).
inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
  Rng r(seed ^ (0x632be59bd9b4e019ULL + index * 0x9e3779b97f4a7c15ULL));
  return r.next_u64();
}

}  // namespace docsynth
