#pragma once

#include <algorithm>
#include <vector>

#include "dyndist/graph.hpp"
#include "dyndist/poly.hpp"
#include "dyndist/rng.hpp"

namespace dyndist::testutil {

inline TruncPoly poly_of(uint32_t h, std::initializer_list<uint64_t> coeffs) {
    TruncPoly p(h);
    uint32_t i = 0;
    for (uint64_t c : coeffs) {
        if (i >= h) break;
        p.coeffs[i++] = c;
    }
    return p;
}

// Random digraph: every ordered pair is an edge with probability p.
inline DynGraph random_digraph(uint32_t n, double p, uint32_t wmax,
                               uint64_t seed) {
    DynGraph g(n, true, double(wmax));
    SplitMix64 rng(seed);
    for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = 0; v < n; ++v) {
            if (u == v) continue;
            if (rng.unit() < p)
                g.set_weight(u, v, 1.0 + double(rng.below(wmax)));
        }
    return g;
}

// Random digraph containing the cycle 0 -> 1 -> ... -> 0, hence strongly
// connected.
inline DynGraph random_strongly_connected(uint32_t n, double p, uint32_t wmax,
                                          uint64_t seed) {
    DynGraph g = random_digraph(n, p, wmax, seed);
    SplitMix64 rng(seed ^ 0xabcdef);
    for (uint32_t u = 0; u < n; ++u)
        g.set_weight(u, (u + 1) % n, 1.0 + double(rng.below(wmax)));
    return g;
}

// Random connected undirected graph: random spanning tree plus extras.
inline DynGraph random_connected_undirected(uint32_t n, double extra_p,
                                            uint32_t wmax, uint64_t seed) {
    DynGraph g(n, false, double(wmax));
    SplitMix64 rng(seed);
    for (uint32_t v = 1; v < n; ++v) {
        const uint32_t u = static_cast<uint32_t>(rng.below(v));
        g.set_weight(u, v, 1.0 + double(rng.below(wmax)));
    }
    for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v)
            if (rng.unit() < extra_p)
                g.set_weight(u, v, 1.0 + double(rng.below(wmax)));
    return g;
}

inline DynGraph directed_cycle(uint32_t n) {
    DynGraph g(n, true, 1.0);
    for (uint32_t u = 0; u < n; ++u) g.set_weight(u, (u + 1) % n, 1.0);
    return g;
}

inline DynGraph path_undirected(uint32_t n) {
    DynGraph g(n, false, 1.0);
    for (uint32_t u = 0; u + 1 < n; ++u) g.set_weight(u, u + 1, 1.0);
    return g;
}

inline DynGraph star_undirected(uint32_t n) {
    DynGraph g(n, false, 1.0);
    for (uint32_t v = 1; v < n; ++v) g.set_weight(0, v, 1.0);
    return g;
}

inline DynGraph complete_graph(uint32_t n, bool directed) {
    DynGraph g(n, directed, 1.0);
    for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = directed ? 0 : u + 1; v < n; ++v)
            if (u != v) g.set_weight(u, v, 1.0);
    return g;
}

inline std::vector<uint32_t> nodes_upto(uint32_t n) {
    std::vector<uint32_t> v(n);
    for (uint32_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace dyndist::testutil
