#pragma once

#include <cstdint>
#include <vector>

#include "dyndist/graph.hpp"

namespace dyndist {

// Dense matrix of distance estimates: nonnegative reals with kInf as the
// unreachable sentinel. Addition saturates through kInf naturally.
struct DistMatrix {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<double> data;

    DistMatrix() = default;
    DistMatrix(uint32_t r, uint32_t c, double fill = kInf)
        : rows(r), cols(c), data(size_t(r) * c, fill) {}

    double& at(uint32_t i, uint32_t j) { return data[size_t(i) * cols + j]; }
    double at(uint32_t i, uint32_t j) const { return data[size_t(i) * cols + j]; }

    // min-plus identity: zero diagonal, infinity elsewhere.
    static DistMatrix identity(uint32_t n) {
        DistMatrix m(n, n, kInf);
        for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 0.0;
        return m;
    }

    DistMatrix submatrix(const std::vector<uint32_t>& I,
                         const std::vector<uint32_t>& J) const {
        DistMatrix r(static_cast<uint32_t>(I.size()),
                     static_cast<uint32_t>(J.size()));
        for (uint32_t i = 0; i < r.rows; ++i)
            for (uint32_t j = 0; j < r.cols; ++j) r.at(i, j) = at(I[i], J[j]);
        return r;
    }

    bool operator==(const DistMatrix& o) const = default;
};

}  // namespace dyndist
