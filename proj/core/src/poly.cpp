#include "dyndist/poly.hpp"

#include <algorithm>

#include "dyndist/errors.hpp"

namespace dyndist {

namespace {
void require_same_h(const TruncPoly& a, const TruncPoly& b) {
    if (a.h() != b.h())
        throw DegreeMismatch("truncated polynomials have different degree bounds");
}
}  // namespace

bool TruncPoly::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](uint64_t c) { return c == 0; });
}

TruncPoly TruncPoly::one(uint32_t h) {
    TruncPoly p(h);
    if (h > 0) p.coeffs[0] = 1;
    return p;
}

TruncPoly TruncPoly::monomial(uint32_t h, uint64_t c, uint32_t k) {
    TruncPoly p(h);
    if (k < h) p.coeffs[k] = c;
    return p;
}

TruncPoly poly_add(const PrimeField& f, const TruncPoly& a, const TruncPoly& b) {
    require_same_h(a, b);
    TruncPoly r(a.h());
    for (uint32_t i = 0; i < a.h(); ++i)
        r.coeffs[i] = f.add(a.coeffs[i], b.coeffs[i]);
    return r;
}

TruncPoly poly_sub(const PrimeField& f, const TruncPoly& a, const TruncPoly& b) {
    require_same_h(a, b);
    TruncPoly r(a.h());
    for (uint32_t i = 0; i < a.h(); ++i)
        r.coeffs[i] = f.sub(a.coeffs[i], b.coeffs[i]);
    return r;
}

TruncPoly poly_neg(const PrimeField& f, const TruncPoly& a) {
    TruncPoly r(a.h());
    for (uint32_t i = 0; i < a.h(); ++i) r.coeffs[i] = f.neg(a.coeffs[i]);
    return r;
}

TruncPoly poly_scale(const PrimeField& f, const TruncPoly& a, uint64_t c) {
    TruncPoly r(a.h());
    if (c == 0) return r;
    for (uint32_t i = 0; i < a.h(); ++i) r.coeffs[i] = f.mul(a.coeffs[i], c);
    return r;
}

TruncPoly poly_mul(const PrimeField& f, const TruncPoly& a, const TruncPoly& b) {
    require_same_h(a, b);
    const uint32_t h = a.h();
    TruncPoly r(h);
    for (uint32_t i = 0; i < h; ++i) {
        const uint64_t ai = a.coeffs[i];
        if (ai == 0) continue;
        uint64_t muls = 0;
        for (uint32_t j = 0; j + i < h; ++j) {
            const uint64_t bj = b.coeffs[j];
            if (bj == 0) continue;
            r.coeffs[i + j] = f.add(
                r.coeffs[i + j],
                f.reduce(static_cast<unsigned __int128>(ai) * bj));
            ++muls;
        }
        FieldOpCounter::bump(muls);
    }
    return r;
}

TruncPoly poly_inv_unit(const PrimeField& f, const TruncPoly& q) {
    const uint32_t h = q.h();
    if (h == 0 || q.coeffs[0] == 0)
        throw NonUnit("polynomial has zero constant term");

    // g := c^-1 agrees with q^-1 modulo X. Each Newton step
    // g <- g*(2 - q*g) doubles the number of correct coefficients.
    TruncPoly g(h);
    g.coeffs[0] = f.inv(q.coeffs[0]);
    uint32_t known = 1;
    const TruncPoly two = poly_add(f, TruncPoly::one(h), TruncPoly::one(h));
    while (known < h) {
        TruncPoly t = poly_mul(f, q, g);
        t = poly_sub(f, two, t);
        g = poly_mul(f, g, t);
        known *= 2;
    }
    return g;
}

bool poly_equal(const TruncPoly& a, const TruncPoly& b) {
    return a.coeffs == b.coeffs;
}

}  // namespace dyndist
