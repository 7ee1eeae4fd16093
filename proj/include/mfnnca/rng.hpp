#pragma once

#include <cstdint>

namespace mfnnca {

// Deterministic xorshift64* generator. Every random draw on an experiment
// path goes through this type so that runs can be replayed bit-exactly from
// the two seeds recorded in the run log, including by reimplementations in
// other languages. Constants:
//   state update: x ^= x >> 12; x ^= x << 25; x ^= x >> 27
//   output:       x * 0x2545F4914F6CDD1D
//   seeding:      one round of splitmix64 (0x9E3779B97F4A7C15 increment,
//                 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB mixers) so that
//                 seed 0 is usable and nearby seeds decorrelate.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
    state_ = z != 0 ? z : 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t next_u64() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1DULL;
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [-r, +r].
  double uniform_symmetric(double r) { return r * (2.0 * uniform01() - 1.0); }

  // Uniform index in [0, n). Plain modulo; the bias is negligible for the
  // pattern-set sizes involved and keeps the sequence trivial to reproduce.
  std::uint64_t index(std::uint64_t n) { return next_u64() % n; }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace mfnnca
