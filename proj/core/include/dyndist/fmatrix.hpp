#pragma once

#include <cstdint>
#include <vector>

#include "dyndist/field.hpp"

namespace dyndist {

// Worker threads used by the dense kernels. The partitioning is by output
// rows, so results (and the op counter, which is bumped in bulk by the
// caller) are identical for every setting.
void set_thread_count(unsigned n);
unsigned thread_count();

// Dense matrix over Z_p, row-major.
struct FMatrix {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<uint64_t> data;

    FMatrix() = default;
    FMatrix(uint32_t r, uint32_t c) : rows(r), cols(c), data(size_t(r) * c, 0) {}

    uint64_t& at(uint32_t i, uint32_t j) { return data[size_t(i) * cols + j]; }
    uint64_t at(uint32_t i, uint32_t j) const { return data[size_t(i) * cols + j]; }
    const uint64_t* row_ptr(uint32_t i) const { return data.data() + size_t(i) * cols; }
    uint64_t* row_ptr(uint32_t i) { return data.data() + size_t(i) * cols; }

    bool is_zero() const;
    bool operator==(const FMatrix& o) const = default;

    static FMatrix identity(uint32_t n);
};

FMatrix fm_add(const PrimeField& f, const FMatrix& a, const FMatrix& b);
FMatrix fm_sub(const PrimeField& f, const FMatrix& a, const FMatrix& b);

// a * b. Cache-friendly i-k-j kernel with 128-bit accumulation; inputs of
// square shape at or above the Strassen threshold recurse through Strassen
// (exact over Z_p, so both paths agree bit-for-bit).
FMatrix fm_mul(const PrimeField& f, const FMatrix& a, const FMatrix& b);

// a * b^T without materializing the transpose.
FMatrix fm_mul_abt(const PrimeField& f, const FMatrix& a, const FMatrix& b);

FMatrix fm_transpose(const FMatrix& a);

// Rows I, columns J. Index sets must be sorted, duplicate-free, in range.
FMatrix fm_submatrix(const FMatrix& a, const std::vector<uint32_t>& I,
                     const std::vector<uint32_t>& J);

// Reference kernel (plain triple loop); used by tests to pin the fast path.
FMatrix fm_mul_naive(const PrimeField& f, const FMatrix& a, const FMatrix& b);

}  // namespace dyndist
