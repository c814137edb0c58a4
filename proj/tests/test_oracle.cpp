#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dyndist/oracle.hpp"
#include "testutil.hpp"

using namespace dyndist;

TEST_CASE("single edge and weighted triangle") {
    DynGraph g(2, true, 5.0);
    g.set_weight(0, 1, 1.0);
    CHECK(oracle::bfs_apsp(g).dist.at(0, 1) == 1.0);
    CHECK(oracle::dijkstra_apsp(g).dist.at(0, 1) == 1.0);
    CHECK(oracle::bfs_apsp(g).dist.at(1, 0) == kInf);

    // Triangle with weights 1, 1, 3: the heavy edge is bypassed.
    DynGraph tri(3, false, 3.0);
    tri.set_weight(0, 1, 1.0);
    tri.set_weight(1, 2, 1.0);
    tri.set_weight(0, 2, 3.0);
    CHECK(oracle::dijkstra_apsp(tri).dist.at(0, 2) == 2.0);
}

TEST_CASE("searches agree with the matrix closure") {
    SplitMix64 seeds(17);
    for (int t = 0; t < 25; ++t) {
        const uint32_t n = 2 + uint32_t(seeds.below(30));
        const DynGraph g = testutil::random_digraph(n, 0.2, 4, seeds.fork());
        const auto dj = oracle::dijkstra_apsp(g);
        const DistMatrix cl = oracle::closure_apsp(g);
        CHECK(dj.dist == cl);
    }
}

TEST_CASE("bfs and dijkstra agree on unit weights") {
    SplitMix64 seeds(18);
    for (int t = 0; t < 25; ++t) {
        const uint32_t n = 2 + uint32_t(seeds.below(30));
        const DynGraph g = testutil::random_digraph(n, 0.2, 1, seeds.fork());
        CHECK(oracle::bfs_apsp(g).dist == oracle::dijkstra_apsp(g).dist);
    }
}

TEST_CASE("hop counts are minimal among shortest paths") {
    // Two shortest paths of value 4 from 0 to 3: 0-1-2-3 (unit weights, 3
    // hops) and 0-3 direct with weight 4 (1 hop). The hop count must be 1.
    DynGraph g(4, true, 4.0);
    g.set_weight(0, 1, 1.0);
    g.set_weight(1, 2, 1.0);
    g.set_weight(2, 3, 2.0);
    g.set_weight(0, 3, 4.0);
    const auto d = oracle::dijkstra_apsp(g);
    CHECK(d.dist.at(0, 3) == 4.0);
    CHECK(d.hops[0][3] == 1);
}

TEST_CASE("exact metrics on hand graphs") {
    const auto p4 = oracle::exact_metrics(testutil::path_undirected(4));
    CHECK(p4.diameter == 3.0);
    CHECK(p4.radius == 2.0);

    const auto star = oracle::exact_metrics(testutil::star_undirected(5));
    CHECK(star.closeness[0] == 1.0);
    CHECK(star.radius == 1.0);
    CHECK(star.diameter == 2.0);

    DynGraph disc(3, false, 1.0);
    disc.set_weight(0, 1, 1.0);
    const auto dm = oracle::exact_metrics(disc);
    CHECK(dm.diameter == kInf);
    for (double c : dm.closeness) CHECK(c == 0.0);
}
