#include "dyndist/polymatrix.hpp"

#include "dyndist/errors.hpp"

namespace dyndist {

namespace {
void require_same_shape(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw ShapeMismatch("polynomial matrix shape mismatch");
    if (a.h != b.h)
        throw DegreeMismatch("polynomial matrix degree bound mismatch");
}

void require_degree0_identity(const PolyMatrix& m) {
    if (m.rows != m.cols) throw BadForm("matrix is not square");
    if (m.h == 0) throw BadForm("degree bound is zero");
    if (m.slices[0] != FMatrix::identity(m.rows))
        throw BadForm("degree-0 slice is not the identity");
}
}  // namespace

TruncPoly PolyMatrix::entry(uint32_t i, uint32_t j) const {
    TruncPoly p(h);
    for (uint32_t k = 0; k < h; ++k) p.coeffs[k] = slices[k].at(i, j);
    return p;
}

void PolyMatrix::set_entry(uint32_t i, uint32_t j, const TruncPoly& p) {
    if (p.h() != h) throw DegreeMismatch("entry degree bound mismatch");
    for (uint32_t k = 0; k < h; ++k) slices[k].at(i, j) = p.coeffs[k];
}

void PolyMatrix::add_to_entry(const PrimeField& f, uint32_t i, uint32_t j,
                              const TruncPoly& p) {
    if (p.h() != h) throw DegreeMismatch("entry degree bound mismatch");
    for (uint32_t k = 0; k < h; ++k)
        slices[k].at(i, j) = f.add(slices[k].at(i, j), p.coeffs[k]);
}

PolyMatrix PolyMatrix::identity(uint32_t n, uint32_t h) {
    PolyMatrix m(n, n, h);
    if (h > 0) m.slices[0] = FMatrix::identity(n);
    return m;
}

PolyMatrix polymat_add(const PrimeField& f, const PolyMatrix& a,
                       const PolyMatrix& b) {
    require_same_shape(a, b);
    PolyMatrix r(a.rows, a.cols, a.h);
    for (uint32_t k = 0; k < a.h; ++k)
        r.slices[k] = fm_add(f, a.slices[k], b.slices[k]);
    return r;
}

PolyMatrix polymat_sub(const PrimeField& f, const PolyMatrix& a,
                       const PolyMatrix& b) {
    require_same_shape(a, b);
    PolyMatrix r(a.rows, a.cols, a.h);
    for (uint32_t k = 0; k < a.h; ++k)
        r.slices[k] = fm_sub(f, a.slices[k], b.slices[k]);
    return r;
}

PolyMatrix polymat_mul(const PrimeField& f, const PolyMatrix& a,
                       const PolyMatrix& b) {
    if (a.cols != b.rows)
        throw ShapeMismatch("polynomial matrix inner dimension mismatch");
    if (a.h != b.h)
        throw DegreeMismatch("polynomial matrix degree bound mismatch");
    PolyMatrix r(a.rows, b.cols, a.h);
    for (uint32_t k = 0; k < a.h; ++k) {
        for (uint32_t i = 0; i <= k; ++i) {
            if (a.slices[i].is_zero() || b.slices[k - i].is_zero()) continue;
            r.slices[k] = fm_add(f, r.slices[k],
                                 fm_mul(f, a.slices[i], b.slices[k - i]));
        }
    }
    return r;
}

PolyMatrix neumann_inverse(const PrimeField& f, const PolyMatrix& m) {
    require_degree0_identity(m);
    const uint32_t n = m.rows, h = m.h;

    // N = I - m; all slices of degree >= 1 negated, degree 0 cleared.
    PolyMatrix nm(n, n, h);
    for (uint32_t k = 1; k < h; ++k) {
        for (size_t idx = 0; idx < m.slices[k].data.size(); ++idx)
            nm.slices[k].data[idx] = f.neg(m.slices[k].data[idx]);
    }

    PolyMatrix result = PolyMatrix::identity(n, h);
    if (h == 1) return result;
    PolyMatrix power = nm;  // N^(2^k)
    uint32_t covered = 1;   // result currently equals sum_{i<covered} N^i
    while (covered < h) {
        result = polymat_add(f, result, polymat_mul(f, result, power));
        covered *= 2;
        if (covered < h) power = polymat_mul(f, power, power);
    }
    return result;
}

namespace {
struct Nz {
    uint32_t r, c;
    uint64_t v;
};

PolyMatrix neumann_from_nz(const PrimeField& f, uint32_t n, uint32_t h,
                           const std::vector<std::vector<Nz>>& nz) {
    PolyMatrix b = PolyMatrix::identity(n, h);
    for (uint32_t k = 1; k < h; ++k) {
        FMatrix& out = b.slices[k];
        uint64_t muls = 0;
        for (uint32_t i = 1; i <= k; ++i) {
            const FMatrix& prev = b.slices[k - i];
            for (const Nz& e : nz[i]) {
                const uint64_t* src = prev.row_ptr(e.c);
                uint64_t* dst = out.row_ptr(e.r);
                for (uint32_t j = 0; j < n; ++j) {
                    if (src[j] == 0) continue;
                    dst[j] = f.add(dst[j],
                                   f.reduce(static_cast<unsigned __int128>(e.v) *
                                            src[j]));
                    ++muls;
                }
            }
        }
        FieldOpCounter::bump(muls);
    }
    return b;
}
}  // namespace

PolyMatrix neumann_inverse_iterative(const PrimeField& f, const PolyMatrix& m) {
    require_degree0_identity(m);
    const uint32_t n = m.rows, h = m.h;

    // Nonzero entries of N^[i] = -m^[i] for i >= 1.
    std::vector<std::vector<Nz>> nz(h);
    for (uint32_t k = 1; k < h; ++k) {
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j) {
                const uint64_t v = m.slices[k].at(i, j);
                if (v != 0) nz[k].push_back({i, j, f.neg(v)});
            }
    }
    return neumann_from_nz(f, n, h, nz);
}

PolyMatrix neumann_inverse_from_entries(
    const PrimeField& f, uint32_t n, uint32_t h,
    const std::vector<std::tuple<uint32_t, uint32_t, TruncPoly>>& entries) {
    NeumannRebuild job(f, n, h, entries);
    job.advance(h);
    return job.take();
}

NeumannRebuild::NeumannRebuild(
    const PrimeField& f, uint32_t n, uint32_t h,
    const std::vector<std::tuple<uint32_t, uint32_t, TruncPoly>>& entries)
    : field_(f), n_(n), h_(h), next_k_(1), nz_(h) {
    for (const auto& [r, c, p] : entries) {
        if (p.h() != h) throw DegreeMismatch("entry degree bound mismatch");
        if (h > 0 && p.coeffs[0] != 0)
            throw BadForm("degree-0 content outside the identity");
        for (uint32_t k = 1; k < h; ++k)
            if (p.coeffs[k] != 0) nz_[k].push_back({r, c, f.neg(p.coeffs[k])});
    }
    b_ = PolyMatrix::identity(n, h);
}

bool NeumannRebuild::advance(uint32_t slices) {
    const PrimeField& f = field_;
    for (uint32_t step = 0; step < slices && next_k_ < h_; ++step) {
        const uint32_t k = next_k_++;
        FMatrix& out = b_.slices[k];
        uint64_t muls = 0;
        for (uint32_t i = 1; i <= k; ++i) {
            const FMatrix& prev = b_.slices[k - i];
            for (const Nz& e : nz_[i]) {
                const uint64_t* src = prev.row_ptr(e.c);
                uint64_t* dst = out.row_ptr(e.r);
                for (uint32_t j = 0; j < n_; ++j) {
                    if (src[j] == 0) continue;
                    dst[j] = f.add(dst[j],
                                   f.reduce(static_cast<unsigned __int128>(e.v) *
                                            src[j]));
                    ++muls;
                }
            }
        }
        FieldOpCounter::bump(muls);
    }
    return done();
}

PolyMatrix NeumannRebuild::take() { return std::move(b_); }

FMatrix coeff_slice_product(const PrimeField& f, const PolyMatrix& u,
                            const PolyMatrix& v, uint32_t k) {
    if (u.cols != v.cols)
        throw ShapeMismatch("coeff_slice_product inner dimension mismatch");
    if (k >= u.h || k >= v.h)
        throw DegreeMismatch("coefficient index exceeds degree bound");

    // Stack the degree-0..k slices of u against the reversed slices of v and
    // take a single a*b^T block product.
    const uint32_t t = u.cols;
    const uint32_t width = t * (k + 1);
    FMatrix us(u.rows, width), vs(v.rows, width);
    for (uint32_t d = 0; d <= k; ++d) {
        const FMatrix& uslice = u.slices[d];
        const FMatrix& vslice = v.slices[k - d];
        for (uint32_t i = 0; i < u.rows; ++i)
            std::copy_n(uslice.row_ptr(i), t, us.row_ptr(i) + size_t(d) * t);
        for (uint32_t i = 0; i < v.rows; ++i)
            std::copy_n(vslice.row_ptr(i), t, vs.row_ptr(i) + size_t(d) * t);
    }
    return fm_mul_abt(f, us, vs);
}

PolyMatrix polymat_submatrix(const PolyMatrix& a, const std::vector<uint32_t>& I,
                             const std::vector<uint32_t>& J) {
    PolyMatrix r(static_cast<uint32_t>(I.size()),
                 static_cast<uint32_t>(J.size()), a.h);
    for (uint32_t k = 0; k < a.h; ++k) r.slices[k] = fm_submatrix(a.slices[k], I, J);
    return r;
}

}  // namespace dyndist
