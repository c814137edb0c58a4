#pragma once

#include <cstdint>
#include <unordered_map>

#include "dyndist/graph.hpp"
#include "dyndist/polymatrix.hpp"
#include "dyndist/rng.hpp"

namespace dyndist {

// Element update against the encoded matrix: add `delta` to entry (i, j).
struct ElementUpdate {
    uint32_t i, j;
    TruncPoly delta;
};

// The graph-to-algebra bridge. An integer-weighted digraph G maps to the
// matrix M with M^[0] = I, M_{u,v} = a_{u,v} X^{c_{u,v}} for every edge with
// weight c_{u,v} < h, and M_{v,v} = 1 + a_{v,v} X. Every a is an independent
// uniform field element (the sign convention of I - A(G) is absorbed into
// the coefficient, which leaves its distribution unchanged). A walk of
// weighted length d from u to v contributes a degree-d monomial to
// (M^-1)_{u,v}; the self-loop terms pad walks so that
// (M^-1)^[d]_{u,v} != 0  <=>  dist(u,v) <= d,
// the forward direction always, the converse with probability at least
// 1 - h n^2 / p over the coefficient draw.
class GraphEncoding {
  public:
    // Requires integer weights. Edges with weight >= h are dropped from the
    // matrix, as if they did not exist.
    GraphEncoding(const DynGraph& g, uint32_t h, const PrimeField& f,
                  uint64_t seed);

    const PolyMatrix& matrix() const { return m_; }
    uint32_t h() const { return h_; }
    uint32_t n() const { return n_; }

    // Translate an edge-weight change (old_w -> new_w, either may be kInf)
    // into one element update. The affected coefficient is freshly sampled
    // on every call so that answers leak nothing about earlier draws.
    ElementUpdate edge_update(uint32_t u, uint32_t v, double old_w, double new_w);

  private:
    uint64_t key(uint32_t u, uint32_t v) const {
        return (uint64_t(u) << 32) | v;
    }

    uint32_t n_, h_;
    PrimeField field_;
    SplitMix64 rng_;
    PolyMatrix m_;
    // Coefficient and exponent currently present in the matrix per edge.
    std::unordered_map<uint64_t, std::pair<uint64_t, uint32_t>> coeff_;
};

}  // namespace dyndist
