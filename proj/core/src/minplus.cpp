#include "dyndist/minplus.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "dyndist/errors.hpp"

namespace dyndist {

namespace {
constexpr int64_t kIntInf = std::numeric_limits<int64_t>::max() / 4;

void require_product_shapes(const DistMatrix& a, const DistMatrix& b) {
    if (a.cols != b.rows)
        throw ShapeMismatch("min-plus product inner dimension mismatch");
}

// Bounded integer (min,+) kernel. Entries >= kIntInf are treated as absent.
void minplus_int_accumulate(const std::vector<int64_t>& a,
                            const std::vector<int64_t>& b, uint32_t n,
                            uint32_t m, uint32_t p, std::vector<int64_t>& c) {
    for (uint32_t i = 0; i < n; ++i) {
        const int64_t* arow = a.data() + size_t(i) * m;
        int64_t* crow = c.data() + size_t(i) * p;
        for (uint32_t k = 0; k < m; ++k) {
            const int64_t av = arow[k];
            if (av >= kIntInf) continue;
            const int64_t* brow = b.data() + size_t(k) * p;
            for (uint32_t j = 0; j < p; ++j) {
                const int64_t cand = av + brow[j];
                if (cand < crow[j]) crow[j] = cand;
            }
        }
    }
}

double max_finite_entry(const DistMatrix& m) {
    double mx = 0.0;
    for (double v : m.data)
        if (v != kInf && v > mx) mx = v;
    return mx;
}
}  // namespace

DistMatrix minplus_exact(const DistMatrix& a, const DistMatrix& b) {
    require_product_shapes(a, b);
    DistMatrix c(a.rows, b.cols, kInf);
    for (uint32_t i = 0; i < a.rows; ++i) {
        for (uint32_t k = 0; k < a.cols; ++k) {
            const double av = a.at(i, k);
            if (av == kInf) continue;
            for (uint32_t j = 0; j < b.cols; ++j) {
                const double cand = av + b.at(k, j);
                if (cand < c.at(i, j)) c.at(i, j) = cand;
            }
        }
    }
    return c;
}

DistMatrix minplus_approx(const DistMatrix& a, const DistMatrix& b, double eps) {
    require_product_shapes(a, b);
    if (eps <= 0.0) throw ConfigError("approximation parameter must be positive");

    const uint32_t n = a.rows, m = a.cols, p = b.cols;
    DistMatrix best(n, p, kInf);

    // Zero entries combine exactly; handle them as one extra "scale" where
    // rounding is lossless (B = 1 covers values in [0,1] too, but zeros plus
    // a large partner would be clipped there, so treat them directly).
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t k = 0; k < m; ++k) {
            if (a.at(i, k) != 0.0) continue;
            for (uint32_t j = 0; j < p; ++j)
                best.at(i, j) = std::min(best.at(i, j), b.at(k, j));
        }
    for (uint32_t k = 0; k < m; ++k)
        for (uint32_t j = 0; j < p; ++j) {
            if (b.at(k, j) != 0.0) continue;
            for (uint32_t i = 0; i < n; ++i)
                best.at(i, j) = std::min(best.at(i, j), a.at(i, k));
        }

    const double wmax = std::max(max_finite_entry(a), max_finite_entry(b));
    if (wmax == 0.0) return best;

    const int64_t r = static_cast<int64_t>(std::ceil(4.0 / eps));
    const int scales = std::max(0, static_cast<int>(std::ceil(std::log2(wmax)))) + 1;

    std::vector<int64_t> ra(size_t(n) * m), rb(size_t(m) * p),
        rc(size_t(n) * p);
    for (int s = 0; s < scales; ++s) {
        const double bscale = std::ldexp(1.0, s);  // 2^s
        auto round_up = [&](double v) -> int64_t {
            if (v == 0.0 || v == kInf || v > bscale) return kIntInf;
            return static_cast<int64_t>(std::ceil(double(r) * v / bscale));
        };
        for (size_t idx = 0; idx < ra.size(); ++idx) ra[idx] = round_up(a.data[idx]);
        for (size_t idx = 0; idx < rb.size(); ++idx) rb[idx] = round_up(b.data[idx]);
        std::fill(rc.begin(), rc.end(), kIntInf);
        minplus_int_accumulate(ra, rb, n, m, p, rc);
        const double descale = bscale / double(r);
        for (size_t idx = 0; idx < rc.size(); ++idx) {
            if (rc[idx] >= kIntInf) continue;
            const double v = double(rc[idx]) * descale;
            if (v < best.data[idx]) best.data[idx] = v;
        }
    }
    return best;
}

DistMatrix minplus_power(const DistMatrix& d, double eps) {
    if (d.rows != d.cols) throw ShapeMismatch("min-plus power needs a square matrix");
    DistMatrix cur = d;
    for (uint32_t i = 0; i < cur.rows; ++i) cur.at(i, i) = 0.0;
    if (cur.rows <= 1) return cur;
    const int levels =
        static_cast<int>(std::ceil(std::log2(static_cast<double>(cur.rows))));
    const double level_eps = eps / (2.0 * levels);
    for (int l = 0; l < levels; ++l)
        cur = minplus_approx(cur, cur, level_eps);
    return cur;
}

DistMatrix extend_to_long_hops(const DistMatrix& d, const HittingSet& hs,
                               double eps) {
    if (d.rows != d.cols) throw ShapeMismatch("extend_to_long_hops needs square input");
    const uint32_t n = d.rows;
    DistMatrix dhat(n, n, kInf);
    if (hs.nodes.empty()) return dhat;

    const std::vector<uint32_t> all = [&] {
        std::vector<uint32_t> v(n);
        for (uint32_t i = 0; i < n; ++i) v[i] = i;
        return v;
    }();
    const double layer = eps / 6.0;  // three approximate stages
    const DistMatrix dvh = d.submatrix(all, hs.nodes);
    const DistMatrix dhh = d.submatrix(hs.nodes, hs.nodes);
    const DistMatrix dhv = d.submatrix(hs.nodes, all);
    const DistMatrix closure = minplus_power(dhh, layer);
    const DistMatrix left = minplus_approx(dvh, closure, layer);
    return minplus_approx(left, dhv, layer);
}

DistMatrix entrywise_min(const DistMatrix& a, const DistMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw ShapeMismatch("entrywise_min shape mismatch");
    DistMatrix r(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i)
        r.data[i] = std::min(a.data[i], b.data[i]);
    return r;
}

}  // namespace dyndist
