#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dyndist/longrange.hpp"
#include "dyndist/oracle.hpp"
#include "testutil.hpp"

using namespace dyndist;
using testutil::nodes_upto;

namespace {
void check_sandwich(const DistMatrix& est, const DistMatrix& truth, double eps,
                    const std::vector<uint32_t>& I,
                    const std::vector<uint32_t>& J) {
    for (uint32_t i = 0; i < est.rows; ++i)
        for (uint32_t j = 0; j < est.cols; ++j) {
            const double t = truth.at(I[i], J[j]);
            const double e = est.at(i, j);
            if (t == kInf) {
                CHECK(e == kInf);
            } else {
                REQUIRE(e != kInf);
                CHECK(e >= t - 1e-9);
                CHECK(e <= (1.0 + eps) * t + 1e-9);
            }
        }
}
}  // namespace

TEST_CASE("apsp: single node and tiny graphs") {
    DynGraph solo(1, true, 1.0);
    LongRangeParams p;
    p.hops = 2;
    p.eps = 0.5;
    p.seed = 2;
    ApspOracle o(solo, p);
    CHECK(o.query({{0}, {0}}).at(0, 0) == 0.0);

    DynGraph empty(3, true, 1.0);
    ApspOracle oe(empty, p);
    const DistMatrix d = oe.query({nodes_upto(3), nodes_upto(3)});
    for (uint32_t i = 0; i < 3; ++i)
        for (uint32_t j = 0; j < 3; ++j)
            CHECK(d.at(i, j) == (i == j ? 0.0 : kInf));
}

TEST_CASE("apsp: long paths go through the hitting-set term") {
    // n-cycle: every nontrivial pair needs many hops while the short-hop
    // layer only covers 3.
    const uint32_t n = 24;
    const DynGraph g = testutil::directed_cycle(n);
    LongRangeParams p;
    p.hops = 3;
    p.eps = 0.4;
    p.seed = 5;
    ApspOracle o(g, p);
    const auto truth = oracle::bfs_apsp(g);
    const DistMatrix est = o.query({nodes_upto(n), nodes_upto(n)});
    check_sandwich(est, truth.dist, p.eps, nodes_upto(n), nodes_upto(n));
}

TEST_CASE("apsp: sandwich holds after every update") {
    SplitMix64 seeds(11);
    const uint32_t n = 32;
    DynGraph g = testutil::random_digraph(n, 0.12, 3, seeds.fork());
    LongRangeParams p;
    p.hops = 4;
    p.eps = 0.5;
    p.mu_cap = 8;
    p.seed = seeds.fork();
    ApspOracle o(g, p);
    SplitMix64 rng(seeds.fork());
    for (int step = 0; step < 20; ++step) {
        const uint32_t u = uint32_t(rng.below(n));
        uint32_t v = uint32_t(rng.below(n));
        if (v == u) v = (v + 1) % n;
        const double w = rng.unit() < 0.3 ? kInf : 1.0 + double(rng.below(3));
        g.set_weight(u, v, w);
        o.update(u, v, w);
        const auto truth = oracle::dijkstra_apsp(g);
        const DistMatrix est = o.query({nodes_upto(n), nodes_upto(n)});
        check_sandwich(est, truth.dist, p.eps, nodes_upto(n), nodes_upto(n));
    }
}

TEST_CASE("apsp: subset queries and explicit updates") {
    SplitMix64 seeds(12);
    const uint32_t n = 20;
    DynGraph g = testutil::random_strongly_connected(n, 0.1, 2, seeds.fork());
    LongRangeParams p;
    p.hops = 4;
    p.eps = 0.3;
    p.seed = seeds.fork();
    ApspOracle o(g, p);

    const std::vector<uint32_t> I = {0, 3, 7, 11}, J = {2, 5, 19};
    const auto truth = oracle::dijkstra_apsp(g);
    check_sandwich(o.query({I, J}), truth.dist, p.eps, I, J);
    CHECK_THROWS_AS(o.query({{3, 1}, J}), IndexOutOfRange);
    CHECK_THROWS_AS(o.query({{0}, {n}}), IndexOutOfRange);

    g.set_weight(0, 1, 2.0);
    const DistMatrix full = o.explicit_update(0, 1, 2.0);
    const auto truth2 = oracle::dijkstra_apsp(g);
    check_sandwich(full, truth2.dist, p.eps, nodes_upto(n), nodes_upto(n));
}

TEST_CASE("apsp: complete graph answers are exactly one") {
    const DynGraph g = testutil::complete_graph(12, true);
    LongRangeParams p;
    p.hops = 2;
    p.eps = 0.5;
    p.seed = 9;
    ApspOracle o(g, p);
    const DistMatrix d = o.query({nodes_upto(12), nodes_upto(12)});
    for (uint32_t i = 0; i < 12; ++i)
        for (uint32_t j = 0; j < 12; ++j)
            CHECK(d.at(i, j) == (i == j ? 0.0 : 1.0));
}

TEST_CASE("apsp: real weights through the scaling bank") {
    SplitMix64 seeds(13);
    const uint32_t n = 16;
    DynGraph g(n, true, 8.0);
    SplitMix64 rng(seeds.fork());
    for (uint32_t u = 0; u < n; ++u) {
        g.set_weight(u, (u + 1) % n, 1.0 + 7.0 * rng.unit());
        for (uint32_t v = 0; v < n; ++v)
            if (u != v && rng.unit() < 0.15)
                g.set_weight(u, v, 1.0 + 7.0 * rng.unit());
    }
    LongRangeParams p;
    p.hops = 4;
    p.eps = 0.5;
    p.mu_cap = 8;
    p.seed = seeds.fork();
    p.real_weights = true;
    ApspOracle o(g, p);
    const auto truth = oracle::dijkstra_apsp(g);
    check_sandwich(o.query({nodes_upto(n), nodes_upto(n)}), truth.dist, p.eps,
                   nodes_upto(n), nodes_upto(n));
}

TEST_CASE("sssp: isolated source and star center") {
    DynGraph iso(4, true, 1.0);
    iso.set_weight(1, 2, 1.0);
    LongRangeParams p;
    p.hops = 2;
    p.eps = 0.5;
    p.seed = 21;
    SsspOracle o(iso, p);
    const auto row = o.row(0);
    CHECK(row[0] == 0.0);
    for (uint32_t v = 1; v < 4; ++v) CHECK(row[v] == kInf);

    DynGraph star = testutil::star_undirected(9);
    SsspOracle os(star, p);
    const auto crow = os.row(0);
    CHECK(crow[0] == 0.0);
    for (uint32_t v = 1; v < 9; ++v) CHECK(crow[v] == 1.0);
}

TEST_CASE("sssp: rows stay sandwiched under updates") {
    SplitMix64 seeds(22);
    const uint32_t n = 32;
    DynGraph g = testutil::random_digraph(n, 0.15, 4, seeds.fork());
    LongRangeParams p;
    p.hops = 4;
    p.eps = 0.5;
    p.mu_cap = 8;
    p.seed = seeds.fork();
    SsspOracle o(g, p);
    SplitMix64 rng(seeds.fork());
    const uint32_t source = 3;
    for (int step = 0; step < 15; ++step) {
        const uint32_t u = uint32_t(rng.below(n));
        uint32_t v = uint32_t(rng.below(n));
        if (v == u) v = (v + 1) % n;
        const double w = rng.unit() < 0.3 ? kInf : 1.0 + double(rng.below(4));
        g.set_weight(u, v, w);
        const auto row = o.update_and_row(source, u, v, w);
        const auto truth = oracle::dijkstra_apsp(g);
        for (uint32_t t = 0; t < n; ++t) {
            const double exact = truth.dist.at(source, t);
            if (exact == kInf) {
                CHECK(row[t] == kInf);
            } else {
                CHECK(row[t] >= exact - 1e-9);
                CHECK(row[t] <= (1.0 + p.eps) * exact + 1e-9);
            }
        }
    }
}

TEST_CASE("sssp: adaptive adversary deleting reported tree edges") {
    SplitMix64 seeds(23);
    const uint32_t n = 20;
    DynGraph g = testutil::complete_graph(n, true);
    LongRangeParams p;
    p.hops = 3;
    p.eps = 0.5;
    p.mu_cap = 8;
    p.seed = seeds.fork();
    SsspOracle o(g, p);
    const uint32_t source = 0;
    auto row = o.row(source);
    SplitMix64 rng(seeds.fork());
    for (int round = 0; round < 60; ++round) {
        // Adversary: delete the tightest edge consistent with the report.
        uint32_t bu = 0, bv = 1;
        double best = kInf;
        for (const auto& e : g.edges()) {
            const double slack = row[e.u] + e.w - row[e.v];
            if (row[e.u] != kInf && slack < best) {
                best = slack;
                bu = e.u;
                bv = e.v;
            }
        }
        g.set_weight(bu, bv, kInf);
        o.update(bu, bv, kInf);
        row = o.row(source);
        const auto truth = oracle::dijkstra_apsp(g);
        for (uint32_t t = 0; t < n; ++t) {
            const double exact = truth.dist.at(source, t);
            if (exact == kInf) {
                CHECK(row[t] == kInf);
            } else {
                CHECK(row[t] >= exact - 1e-9);
                CHECK(row[t] <= (1.0 + p.eps) * exact + 1e-9);
            }
        }
    }
}

TEST_CASE("undirected oracle: rejects digraphs, handles far pairs") {
    DynGraph dg(3, true, 1.0);
    LongRangeParams p;
    p.hops = 3;
    p.eps = 0.5;
    p.seed = 31;
    CHECK_THROWS_AS(UndirectedOracle(dg, p), DirectedInput);

    // Long path: distant pairs are answered by the hub term.
    const uint32_t n = 30;
    const DynGraph path = testutil::path_undirected(n);
    UndirectedOracle o(path, p);
    const auto truth = oracle::bfs_apsp(path);
    const DistMatrix est = o.query({nodes_upto(n), nodes_upto(n)});
    check_sandwich(est, truth.dist, p.eps, nodes_upto(n), nodes_upto(n));
}

TEST_CASE("undirected oracle: sandwich under updates") {
    SplitMix64 seeds(32);
    const uint32_t n = 28;
    DynGraph g = testutil::random_connected_undirected(n, 0.05, 3, seeds.fork());
    LongRangeParams p;
    p.hops = 4;
    p.eps = 0.5;
    p.mu_cap = 8;
    p.seed = seeds.fork();
    UndirectedOracle o(g, p);
    SplitMix64 rng(seeds.fork());
    for (int step = 0; step < 12; ++step) {
        uint32_t u = uint32_t(rng.below(n));
        uint32_t v = uint32_t(rng.below(n));
        if (u == v) v = (v + 1) % n;
        const double w = 1.0 + double(rng.below(3));
        g.set_weight(u, v, w);
        o.update(u, v, w);
        const auto truth = oracle::dijkstra_apsp(g);
        check_sandwich(o.query({nodes_upto(n), nodes_upto(n)}), truth.dist,
                       p.eps, nodes_upto(n), nodes_upto(n));
    }
}

TEST_CASE("fresh hitting sets: different seeds still satisfy the sandwich") {
    const uint32_t n = 16;
    const DynGraph g = testutil::random_strongly_connected(n, 0.1, 2, 909);
    const auto truth = oracle::dijkstra_apsp(g);
    for (uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        LongRangeParams p;
        p.hops = 3;
        p.eps = 0.5;
        p.seed = seed;
        ApspOracle o(g, p);
        check_sandwich(o.query({nodes_upto(n), nodes_upto(n)}), truth.dist,
                       p.eps, nodes_upto(n), nodes_upto(n));
    }
}
