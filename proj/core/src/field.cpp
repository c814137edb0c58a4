#include "dyndist/field.hpp"

namespace dyndist {

namespace {
uint64_t& counter_slot() {
    thread_local uint64_t n = 0;
    return n;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}
}  // namespace

uint64_t FieldOpCounter::now() { return counter_slot(); }
void FieldOpCounter::bump(uint64_t k) { counter_slot() += k; }
void FieldOpCounter::reset() { counter_slot() = 0; }

PrimeField::PrimeField(uint64_t p) : p_(p), mersenne_(p == kDefaultPrime) {
    if (p < 2 || p >= (uint64_t(1) << 62))
        throw ConfigError("field modulus must be a prime below 2^62");
    if (!is_prime(p)) throw ConfigError("field modulus is not prime");
}

uint64_t PrimeField::pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1 % p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t PrimeField::inv(uint64_t a) const {
    if (a == 0) throw ZeroInverse("inverse of zero field element");
    return pow(a, p_ - 2);
}

bool PrimeField::is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                       23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set decides primality for every n < 2^64.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                       23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace dyndist
