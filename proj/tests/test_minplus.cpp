#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dyndist/minplus.hpp"
#include "testutil.hpp"

using namespace dyndist;

namespace {
DistMatrix random_dist(uint32_t r, uint32_t c, double lo, double hi,
                       double inf_p, SplitMix64& rng) {
    DistMatrix m(r, c);
    for (auto& v : m.data)
        v = rng.unit() < inf_p ? kInf : lo + rng.unit() * (hi - lo);
    return m;
}

// Reference with the k-outer loop order.
DistMatrix exact_reference(const DistMatrix& a, const DistMatrix& b) {
    DistMatrix c(a.rows, b.cols, kInf);
    for (uint32_t k = 0; k < a.cols; ++k)
        for (uint32_t i = 0; i < a.rows; ++i)
            for (uint32_t j = 0; j < b.cols; ++j)
                c.at(i, j) = std::min(c.at(i, j), a.at(i, k) + b.at(k, j));
    return c;
}
}  // namespace

TEST_CASE("exact product: identity and infinity propagation") {
    SplitMix64 rng(1);
    const DistMatrix a = random_dist(4, 4, 1, 50, 0.2, rng);
    CHECK(minplus_exact(a, DistMatrix::identity(4)) == a);
    CHECK(minplus_exact(DistMatrix::identity(4), a) == a);

    DistMatrix inf_row(2, 2, kInf);
    inf_row.at(1, 0) = 1.0;
    inf_row.at(1, 1) = 2.0;
    const DistMatrix c = minplus_exact(inf_row, inf_row);
    CHECK(c.at(0, 0) == kInf);
    CHECK(c.at(0, 1) == kInf);
    CHECK(c.at(1, 0) == 3.0);  // only the k=1 path 2+1 is finite
    CHECK(c.at(1, 1) == 4.0);

    CHECK_THROWS_AS(minplus_exact(DistMatrix(2, 3), DistMatrix(2, 3)),
                    ShapeMismatch);
}

TEST_CASE("exact product matches the reference loop order") {
    SplitMix64 rng(2);
    for (int t = 0; t < 50; ++t) {
        const DistMatrix a = random_dist(8, 8, 1, 100, 0.15, rng);
        const DistMatrix b = random_dist(8, 8, 1, 100, 0.15, rng);
        CHECK(minplus_exact(a, b) == exact_reference(a, b));
    }
}

TEST_CASE("exact product is associative") {
    SplitMix64 rng(3);
    for (int t = 0; t < 30; ++t) {
        const DistMatrix a = random_dist(5, 5, 1, 40, 0.1, rng);
        const DistMatrix b = random_dist(5, 5, 1, 40, 0.1, rng);
        const DistMatrix c = random_dist(5, 5, 1, 40, 0.1, rng);
        CHECK(minplus_exact(minplus_exact(a, b), c) ==
              minplus_exact(a, minplus_exact(b, c)));
    }
}

TEST_CASE("approximate product: lossless when the grid is finer than gaps") {
    // Integer entries, eps small enough that ceil rounding is exact at the
    // owning scale.
    SplitMix64 rng(4);
    DistMatrix a(3, 3), b(3, 3);
    for (auto& v : a.data) v = 1.0 + double(rng.below(4));
    for (auto& v : b.data) v = 1.0 + double(rng.below(4));
    const DistMatrix approx = minplus_approx(a, b, 1e-3);
    CHECK(approx == minplus_exact(a, b));
}

TEST_CASE("approximate product: all-equal matrices") {
    DistMatrix a(4, 4, 7.0);
    const DistMatrix c = minplus_approx(a, a, 0.25);
    for (double v : c.data) {
        CHECK(v >= 14.0);
        CHECK(v <= 14.0 * 1.25);
    }
}

TEST_CASE("approximate product: entry-wise ratio within (1+eps)") {
    SplitMix64 rng(5);
    for (double eps : {0.05, 0.3}) {
        for (int t = 0; t < 20; ++t) {
            const DistMatrix a = random_dist(16, 16, 1, 100, 0.1, rng);
            const DistMatrix b = random_dist(16, 16, 1, 100, 0.1, rng);
            const DistMatrix approx = minplus_approx(a, b, eps);
            const DistMatrix exact = minplus_exact(a, b);
            for (size_t i = 0; i < exact.data.size(); ++i) {
                if (exact.data[i] == kInf) {
                    CHECK(approx.data[i] == kInf);
                    continue;
                }
                CHECK(approx.data[i] >= exact.data[i]);
                CHECK(approx.data[i] <= exact.data[i] * (1.0 + eps) + 1e-9);
            }
        }
    }
}

TEST_CASE("power: closed matrices stay put, paths accumulate") {
    // A metric (already closed) matrix moves by at most (1+eps).
    DistMatrix metric(3, 3, kInf);
    for (uint32_t i = 0; i < 3; ++i) metric.at(i, i) = 0;
    metric.at(0, 1) = metric.at(1, 0) = 2;
    metric.at(1, 2) = metric.at(2, 1) = 3;
    metric.at(0, 2) = metric.at(2, 0) = 5;
    const DistMatrix closed = minplus_power(metric, 0.2);
    for (size_t i = 0; i < metric.data.size(); ++i) {
        CHECK(closed.data[i] >= metric.data[i] - 1e-12);
        CHECK(closed.data[i] <= metric.data[i] * 1.2 + 1e-9);
    }

    // Directed path: closure equals prefix sums within (1+eps).
    const uint32_t n = 9;
    DistMatrix path(n, n, kInf);
    double weights[] = {3, 1, 4, 1, 5, 9, 2, 6};
    for (uint32_t i = 0; i + 1 < n; ++i) path.at(i, i + 1) = weights[i];
    const DistMatrix pc = minplus_power(path, 0.1);
    for (uint32_t i = 0; i < n; ++i) {
        double sum = 0.0;
        CHECK(pc.at(i, i) == 0.0);
        for (uint32_t j = i + 1; j < n; ++j) {
            sum += weights[j - 1];
            CHECK(pc.at(i, j) >= sum - 1e-12);
            CHECK(pc.at(i, j) <= sum * 1.1 + 1e-9);
        }
    }

    // Unreachable blocks stay infinite.
    DistMatrix split(4, 4, kInf);
    split.at(0, 1) = 1;
    split.at(2, 3) = 1;
    const DistMatrix sc = minplus_power(split, 0.5);
    CHECK(sc.at(0, 2) == kInf);
    CHECK(sc.at(1, 3) == kInf);
}

TEST_CASE("long-hop extension: degenerate hitting sets") {
    SplitMix64 rng(6);
    DistMatrix d(5, 5, kInf);
    for (uint32_t i = 0; i < 5; ++i) d.at(i, i) = 0;
    d.at(0, 1) = 2;
    d.at(1, 2) = 2;
    d.at(2, 3) = 2;
    d.at(3, 4) = 2;

    HittingSet none;
    const DistMatrix empty = extend_to_long_hops(d, none, 0.3);
    for (double v : empty.data) CHECK(v == kInf);

    HittingSet all;
    all.nodes = testutil::nodes_upto(5);
    const DistMatrix ext = extend_to_long_hops(d, all, 0.3);
    // With H = V the extension is an approximate closure of d.
    const DistMatrix want = minplus_power(d, 1e-12);
    for (size_t i = 0; i < want.data.size(); ++i) {
        if (want.data[i] == kInf) {
            CHECK(ext.data[i] == kInf);
        } else {
            CHECK(ext.data[i] >= want.data[i] - 1e-12);
            CHECK(ext.data[i] <= want.data[i] * 1.3 + 1e-9);
        }
    }
}

TEST_CASE("long-hop extension: a two-segment path through one hub") {
    DistMatrix d(3, 3, kInf);
    for (uint32_t i = 0; i < 3; ++i) d.at(i, i) = 0;
    d.at(0, 1) = 4;  // s -> hub
    d.at(1, 2) = 6;  // hub -> t
    HittingSet hub;
    hub.nodes = {1};
    const DistMatrix ext = extend_to_long_hops(d, hub, 0.2);
    CHECK(ext.at(0, 2) >= 10.0 - 1e-12);
    CHECK(ext.at(0, 2) <= 10.0 * 1.2 + 1e-9);
}

TEST_CASE("never-underestimate survives composition") {
    SplitMix64 rng(7);
    for (int t = 0; t < 20; ++t) {
        // Truth and a never-underestimating perturbation of it.
        const DistMatrix truth = random_dist(10, 10, 1, 30, 0.1, rng);
        DistMatrix over = truth;
        for (auto& v : over.data)
            if (v != kInf) v *= 1.0 + 0.05 * rng.unit();
        const DistMatrix to = minplus_approx(over, over, 0.2);
        const DistMatrix te = minplus_exact(truth, truth);
        for (size_t i = 0; i < to.data.size(); ++i)
            CHECK(to.data[i] >= te.data[i] - 1e-12);
    }
}
