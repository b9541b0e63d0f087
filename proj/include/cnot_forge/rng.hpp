#pragma once

#include <cstdint>

namespace cnot_forge {

/// Small deterministic generator (splitmix64). Used instead of <random>
/// engines/distributions so that seeded runs are byte-identical across
/// platforms and standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
  uint64_t below(uint64_t bound) {
    const uint64_t limit = bound * (UINT64_MAX / bound);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  bool coin() { return next() >> 63; }

  /// Derive an independent stream, e.g. one per trial index.
  static uint64_t derive(uint64_t seed, uint64_t stream) {
    Rng r(seed ^ (0x632be59bd9b4e019ULL * (stream + 1)));
    return r.next();
  }

 private:
  uint64_t state_;
};

}  // namespace cnot_forge
