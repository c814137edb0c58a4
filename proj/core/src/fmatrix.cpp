#include "dyndist/fmatrix.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "dyndist/errors.hpp"

namespace dyndist {

namespace {

std::atomic<unsigned> g_threads{1};

constexpr uint32_t kStrassenThreshold = 256;

void require(bool ok, const char* msg) {
    if (!ok) throw ShapeMismatch(msg);
}

// Multiply rows [r0, r1) of a*b into out. Products are reduced individually
// and accumulated in 128 bits, which cannot overflow for any feasible inner
// dimension (each term is < 2^62).
void mul_rows(const PrimeField& f, const FMatrix& a, const FMatrix& b,
              FMatrix& out, uint32_t r0, uint32_t r1) {
    const uint32_t n = b.cols;
    std::vector<unsigned __int128> acc(n);
    for (uint32_t i = r0; i < r1; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (uint32_t k = 0; k < a.cols; ++k) {
            const uint64_t av = a.at(i, k);
            if (av == 0) continue;
            const uint64_t* brow = b.row_ptr(k);
            for (uint32_t j = 0; j < n; ++j) {
                if (brow[j] == 0) continue;
                acc[j] += f.reduce(static_cast<unsigned __int128>(av) * brow[j]);
            }
        }
        uint64_t* orow = out.row_ptr(i);
        for (uint32_t j = 0; j < n; ++j)
            orow[j] = static_cast<uint64_t>(acc[j] % f.p());
    }
}

void mul_rows_abt(const PrimeField& f, const FMatrix& a, const FMatrix& b,
                  FMatrix& out, uint32_t r0, uint32_t r1) {
    for (uint32_t i = r0; i < r1; ++i) {
        const uint64_t* arow = a.row_ptr(i);
        uint64_t* orow = out.row_ptr(i);
        for (uint32_t j = 0; j < b.rows; ++j) {
            const uint64_t* brow = b.row_ptr(j);
            unsigned __int128 acc = 0;
            for (uint32_t k = 0; k < a.cols; ++k) {
                if (arow[k] == 0 || brow[k] == 0) continue;
                acc += f.reduce(static_cast<unsigned __int128>(arow[k]) * brow[k]);
            }
            orow[j] = static_cast<uint64_t>(acc % f.p());
        }
    }
}

template <typename RowFn>
void parallel_rows(uint32_t rows, RowFn fn) {
    const unsigned t = std::min<unsigned>(g_threads.load(), rows == 0 ? 1 : rows);
    if (t <= 1 || rows < 64) {
        fn(0, rows);
        return;
    }
    std::vector<std::thread> workers;
    const uint32_t chunk = (rows + t - 1) / t;
    for (unsigned w = 0; w < t; ++w) {
        const uint32_t r0 = std::min<uint32_t>(w * chunk, rows);
        const uint32_t r1 = std::min<uint32_t>(r0 + chunk, rows);
        if (r0 == r1) continue;
        workers.emplace_back([=, &fn] { fn(r0, r1); });
    }
    for (auto& w : workers) w.join();
}

FMatrix strassen(const PrimeField& f, const FMatrix& a, const FMatrix& b);

FMatrix mul_dispatch(const PrimeField& f, const FMatrix& a, const FMatrix& b) {
    if (a.rows == a.cols && a.cols == b.rows && b.rows == b.cols &&
        a.rows >= kStrassenThreshold && a.rows % 2 == 0) {
        return strassen(f, a, b);
    }
    FMatrix out(a.rows, b.cols);
    FieldOpCounter::bump(uint64_t(a.rows) * a.cols * b.cols);
    parallel_rows(a.rows, [&](uint32_t r0, uint32_t r1) {
        mul_rows(f, a, b, out, r0, r1);
    });
    return out;
}

FMatrix quadrant(const FMatrix& m, uint32_t qi, uint32_t qj) {
    const uint32_t h = m.rows / 2;
    FMatrix q(h, h);
    for (uint32_t i = 0; i < h; ++i)
        std::copy_n(m.row_ptr(qi * h + i) + qj * h, h, q.row_ptr(i));
    return q;
}

FMatrix strassen(const PrimeField& f, const FMatrix& a, const FMatrix& b) {
    const FMatrix a11 = quadrant(a, 0, 0), a12 = quadrant(a, 0, 1);
    const FMatrix a21 = quadrant(a, 1, 0), a22 = quadrant(a, 1, 1);
    const FMatrix b11 = quadrant(b, 0, 0), b12 = quadrant(b, 0, 1);
    const FMatrix b21 = quadrant(b, 1, 0), b22 = quadrant(b, 1, 1);

    const FMatrix m1 = mul_dispatch(f, fm_add(f, a11, a22), fm_add(f, b11, b22));
    const FMatrix m2 = mul_dispatch(f, fm_add(f, a21, a22), b11);
    const FMatrix m3 = mul_dispatch(f, a11, fm_sub(f, b12, b22));
    const FMatrix m4 = mul_dispatch(f, a22, fm_sub(f, b21, b11));
    const FMatrix m5 = mul_dispatch(f, fm_add(f, a11, a12), b22);
    const FMatrix m6 = mul_dispatch(f, fm_sub(f, a21, a11), fm_add(f, b11, b12));
    const FMatrix m7 = mul_dispatch(f, fm_sub(f, a12, a22), fm_add(f, b21, b22));

    const uint32_t h = a.rows / 2;
    FMatrix out(a.rows, a.rows);
    for (uint32_t i = 0; i < h; ++i) {
        for (uint32_t j = 0; j < h; ++j) {
            out.at(i, j) = f.add(f.sub(f.add(m1.at(i, j), m4.at(i, j)),
                                       m5.at(i, j)),
                                 m7.at(i, j));
            out.at(i, j + h) = f.add(m3.at(i, j), m5.at(i, j));
            out.at(i + h, j) = f.add(m2.at(i, j), m4.at(i, j));
            out.at(i + h, j + h) = f.add(
                f.add(f.sub(m1.at(i, j), m2.at(i, j)), m3.at(i, j)),
                m6.at(i, j));
        }
    }
    return out;
}

}  // namespace

void set_thread_count(unsigned n) { g_threads.store(n == 0 ? 1 : n); }
unsigned thread_count() { return g_threads.load(); }

bool FMatrix::is_zero() const {
    return std::all_of(data.begin(), data.end(),
                       [](uint64_t v) { return v == 0; });
}

FMatrix FMatrix::identity(uint32_t n) {
    FMatrix m(n, n);
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FMatrix fm_add(const PrimeField& f, const FMatrix& a, const FMatrix& b) {
    require(a.rows == b.rows && a.cols == b.cols, "fm_add shape mismatch");
    FMatrix r(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i)
        r.data[i] = f.add(a.data[i], b.data[i]);
    return r;
}

FMatrix fm_sub(const PrimeField& f, const FMatrix& a, const FMatrix& b) {
    require(a.rows == b.rows && a.cols == b.cols, "fm_sub shape mismatch");
    FMatrix r(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i)
        r.data[i] = f.sub(a.data[i], b.data[i]);
    return r;
}

FMatrix fm_mul(const PrimeField& f, const FMatrix& a, const FMatrix& b) {
    require(a.cols == b.rows, "fm_mul inner dimension mismatch");
    return mul_dispatch(f, a, b);
}

FMatrix fm_mul_abt(const PrimeField& f, const FMatrix& a, const FMatrix& b) {
    require(a.cols == b.cols, "fm_mul_abt inner dimension mismatch");
    FMatrix out(a.rows, b.rows);
    FieldOpCounter::bump(uint64_t(a.rows) * a.cols * b.rows);
    parallel_rows(a.rows, [&](uint32_t r0, uint32_t r1) {
        mul_rows_abt(f, a, b, out, r0, r1);
    });
    return out;
}

FMatrix fm_transpose(const FMatrix& a) {
    FMatrix r(a.cols, a.rows);
    for (uint32_t i = 0; i < a.rows; ++i)
        for (uint32_t j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
    return r;
}

FMatrix fm_submatrix(const FMatrix& a, const std::vector<uint32_t>& I,
                     const std::vector<uint32_t>& J) {
    for (size_t k = 0; k < I.size(); ++k) {
        if (I[k] >= a.rows || (k > 0 && I[k] <= I[k - 1]))
            throw IndexOutOfRange("row index set invalid");
    }
    for (size_t k = 0; k < J.size(); ++k) {
        if (J[k] >= a.cols || (k > 0 && J[k] <= J[k - 1]))
            throw IndexOutOfRange("column index set invalid");
    }
    FMatrix r(static_cast<uint32_t>(I.size()), static_cast<uint32_t>(J.size()));
    for (uint32_t i = 0; i < r.rows; ++i)
        for (uint32_t j = 0; j < r.cols; ++j) r.at(i, j) = a.at(I[i], J[j]);
    return r;
}

FMatrix fm_mul_naive(const PrimeField& f, const FMatrix& a, const FMatrix& b) {
    require(a.cols == b.rows, "fm_mul inner dimension mismatch");
    FMatrix r(a.rows, b.cols);
    for (uint32_t i = 0; i < a.rows; ++i)
        for (uint32_t j = 0; j < b.cols; ++j) {
            uint64_t s = 0;
            for (uint32_t k = 0; k < a.cols; ++k)
                s = f.add(s, f.mul(a.at(i, k), b.at(k, j)));
            r.at(i, j) = s;
        }
    return r;
}

}  // namespace dyndist
