#pragma once

#include <cstdint>
#include <vector>

#include "dyndist/field.hpp"

namespace dyndist {

// A polynomial over Z_p truncated modulo X^h. The coefficient vector always
// has length exactly h; degree-h and higher terms do not exist anywhere in
// the library. All operands of a binary operation must share h.
struct TruncPoly {
    std::vector<uint64_t> coeffs;

    TruncPoly() = default;
    explicit TruncPoly(uint32_t h) : coeffs(h, 0) {}

    uint32_t h() const { return static_cast<uint32_t>(coeffs.size()); }
    bool is_zero() const;

    static TruncPoly zero(uint32_t h) { return TruncPoly(h); }
    static TruncPoly one(uint32_t h);
    // c * X^k, truncated (k >= h yields the zero polynomial).
    static TruncPoly monomial(uint32_t h, uint64_t c, uint32_t k);
};

TruncPoly poly_add(const PrimeField& f, const TruncPoly& a, const TruncPoly& b);
TruncPoly poly_sub(const PrimeField& f, const TruncPoly& a, const TruncPoly& b);
TruncPoly poly_neg(const PrimeField& f, const TruncPoly& a);
TruncPoly poly_scale(const PrimeField& f, const TruncPoly& a, uint64_t c);

// Schoolbook convolution truncated to degrees < h. Quadratic in h; the code
// keeps this kernel behind one function so an FFT backend can replace it.
TruncPoly poly_mul(const PrimeField& f, const TruncPoly& a, const TruncPoly& b);

// Inverse of a unit (nonzero constant term) via Newton iteration, doubling
// the known precision each round. Throws NonUnit otherwise.
TruncPoly poly_inv_unit(const PrimeField& f, const TruncPoly& q);

bool poly_equal(const TruncPoly& a, const TruncPoly& b);

}  // namespace dyndist
