#pragma once

#include <cstdint>

namespace dyndist {

// SplitMix64. This is the project-wide generator: seedable, counter-based
// (the state advances by a fixed odd constant, the output is a bijective mix
// of the counter), and trivially reproducible in other languages. Golden
// values in the tests are frozen against this exact algorithm.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed = 0) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) by rejection; bound must be nonzero.
    uint64_t below(uint64_t bound) {
        // Largest multiple of bound that fits in [0, 2^64-1].
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t r = next();
        while (r >= limit) r = next();
        return r % bound;
    }

    // Derive an independent stream (used to hand sub-seeds to components).
    uint64_t fork() { return next(); }

    double unit() {  // [0,1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

  private:
    uint64_t state_;
};

}  // namespace dyndist
