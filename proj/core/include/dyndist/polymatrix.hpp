#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "dyndist/fmatrix.hpp"
#include "dyndist/poly.hpp"

namespace dyndist {

// Matrix over Z_p[X]/<X^h>, stored slice-major: slices[k] holds every
// degree-k coefficient. All hot operations (slice products, slice queries)
// consume whole coefficient matrices, so this layout turns them into plain
// field-matrix products.
struct PolyMatrix {
    uint32_t rows = 0;
    uint32_t cols = 0;
    uint32_t h = 0;
    std::vector<FMatrix> slices;  // h matrices of shape rows x cols

    PolyMatrix() = default;
    PolyMatrix(uint32_t r, uint32_t c, uint32_t h_)
        : rows(r), cols(c), h(h_), slices(h_, FMatrix(r, c)) {}

    TruncPoly entry(uint32_t i, uint32_t j) const;
    void set_entry(uint32_t i, uint32_t j, const TruncPoly& p);
    void add_to_entry(const PrimeField& f, uint32_t i, uint32_t j,
                      const TruncPoly& p);

    static PolyMatrix identity(uint32_t n, uint32_t h);

    bool operator==(const PolyMatrix& o) const = default;
};

PolyMatrix polymat_add(const PrimeField& f, const PolyMatrix& a,
                       const PolyMatrix& b);
PolyMatrix polymat_sub(const PrimeField& f, const PolyMatrix& a,
                       const PolyMatrix& b);

// (ab)^[k] = sum_{i<=k} a^[i] b^[k-i], all k < h.
PolyMatrix polymat_mul(const PrimeField& f, const PolyMatrix& a,
                       const PolyMatrix& b);

// Inverse of m with m^[0] = I (throws BadForm otherwise). Writing
// m = I - N, every entry of N is divisible by X, so N^h vanishes and the
// inverse is the truncated Neumann series sum_k N^k, evaluated as the
// doubling product prod_k (I + N^(2^k)).
PolyMatrix neumann_inverse(const PrimeField& f, const PolyMatrix& m);

// Same inverse, computed slice by slice from the recurrence
// B^[k] = sum_{i>=1} N^[i] B^[k-i]. Exploits sparsity of the N slices, which
// makes it the right choice for graph encodings at larger n and h. Agrees
// with neumann_inverse exactly.
PolyMatrix neumann_inverse_iterative(const PrimeField& f, const PolyMatrix& m);

// Entry list form of the same inverse: `entries` holds the content of m - I
// (every polynomial must have zero constant term). Avoids materializing a
// dense n x n x h input when the matrix is sparse.
PolyMatrix neumann_inverse_from_entries(
    const PrimeField& f, uint32_t n, uint32_t h,
    const std::vector<std::tuple<uint32_t, uint32_t, TruncPoly>>& entries);

// The same recurrence run incrementally, one batch of output slices at a
// time, so a full re-inversion can be spread over several update boundaries.
class NeumannRebuild {
  public:
    NeumannRebuild(const PrimeField& f, uint32_t n, uint32_t h,
                   const std::vector<std::tuple<uint32_t, uint32_t, TruncPoly>>&
                       entries);

    bool done() const { return next_k_ >= h_; }
    // Compute up to `slices` more coefficient slices; returns done().
    bool advance(uint32_t slices);
    PolyMatrix take();  // valid once done

  private:
    struct Nz {
        uint32_t r, c;
        uint64_t v;
    };
    PrimeField field_;
    uint32_t n_, h_, next_k_;
    std::vector<std::vector<Nz>> nz_;
    PolyMatrix b_;
};

// k-th coefficient of u * v^T (u is r_u x c, v is r_v x c), computed as one
// block product of the stacked slice matrices
// [u^[0] | ... | u^[k]] [v^[k] | ... | v^[0]]^T.
FMatrix coeff_slice_product(const PrimeField& f, const PolyMatrix& u,
                            const PolyMatrix& v, uint32_t k);

PolyMatrix polymat_submatrix(const PolyMatrix& a, const std::vector<uint32_t>& I,
                             const std::vector<uint32_t>& J);

}  // namespace dyndist
