#pragma once

#include <cstdint>

#include "dyndist/errors.hpp"
#include "dyndist/rng.hpp"

namespace dyndist {

// Running count of field multiplications/inversions, used by the worst-case
// smoothing experiments and the CLI op-count column. Additions are not
// counted; multiplication dominates every kernel here. Bulk kernels account
// for their work with a single bump from the orchestrating thread, so the
// count is independent of the worker-thread configuration.
struct FieldOpCounter {
    static uint64_t now();
    static void bump(uint64_t k = 1);
    static void reset();
};

// Arithmetic in Z_p for a prime p < 2^62. The default prime is the Mersenne
// prime 2^61 - 1, which admits a divisionless reduction; any other prime goes
// through a 128-bit remainder. Values are plain uint64_t in [0, p); the field
// object is the only thing that interprets them.
class PrimeField {
  public:
    static constexpr uint64_t kDefaultPrime = (uint64_t(1) << 61) - 1;

    explicit PrimeField(uint64_t p = kDefaultPrime);

    uint64_t p() const { return p_; }

    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;  // p < 2^62, no overflow
        return s >= p_ ? s - p_ : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p_ - a; }

    uint64_t mul(uint64_t a, uint64_t b) const {
        FieldOpCounter::bump();
        return reduce(static_cast<unsigned __int128>(a) * b);
    }

    // Reduce a 128-bit product without touching the op counter; kernels that
    // batch their accounting use this.
    uint64_t reduce(unsigned __int128 t) const {
        if (mersenne_) {
            const uint64_t m = kDefaultPrime;
            uint64_t r = (uint64_t(t) & m) + uint64_t(t >> 61);
            r = (r & m) + (r >> 61);
            return r >= m ? r - m : r;
        }
        return static_cast<uint64_t>(t % p_);
    }

    uint64_t pow(uint64_t a, uint64_t e) const;

    // Multiplicative inverse; throws ZeroInverse on a == 0.
    uint64_t inv(uint64_t a) const;

    // Uniform element of [0, p) via rejection sampling.
    uint64_t sample(SplitMix64& rng) const { return rng.below(p_); }

    // Deterministic Miller-Rabin, valid for all n < 2^64.
    static bool is_prime(uint64_t n);

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  private:
    uint64_t p_;
    bool mersenne_;
};

}  // namespace dyndist
