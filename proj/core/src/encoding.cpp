#include "dyndist/encoding.hpp"

#include <algorithm>
#include <cmath>

#include "dyndist/errors.hpp"

namespace dyndist {

GraphEncoding::GraphEncoding(const DynGraph& g, uint32_t h, const PrimeField& f,
                             uint64_t seed)
    : n_(g.n()), h_(h), field_(f), rng_(seed), m_(g.n(), g.n(), h) {
    if (h == 0) throw BadForm("degree bound must be positive");
    if (!g.integer_weights())
        throw ConfigError("graph encoding requires integer weights");

    m_.slices[0] = FMatrix::identity(n_);
    if (h_ > 1) {
        for (uint32_t v = 0; v < n_; ++v) {
            const uint64_t a = field_.sample(rng_);
            m_.slices[1].at(v, v) = a;
            coeff_[key(v, v)] = {a, 1};
        }
    }
    // Fixed edge order so the coefficient draw is reproducible from the seed
    // alone, independent of hash-map iteration order.
    std::vector<DynGraph::Edge> edges = g.edges();
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (const auto& e : edges) {
        const auto w = static_cast<uint32_t>(e.w);
        if (w >= h_) continue;
        const uint64_t a = field_.sample(rng_);
        m_.slices[w].at(e.u, e.v) = field_.add(m_.slices[w].at(e.u, e.v), a);
        coeff_[key(e.u, e.v)] = {a, w};
    }
}

ElementUpdate GraphEncoding::edge_update(uint32_t u, uint32_t v, double old_w,
                                         double new_w) {
    if (u >= n_ || v >= n_) throw IndexOutOfRange("edge endpoint out of range");
    if (u == v) throw ConfigError("self loops are not representable");

    TruncPoly delta(h_);
    auto it = coeff_.find(key(u, v));
    if (it != coeff_.end()) {
        // Remove the old monomial.
        delta.coeffs[it->second.second] =
            field_.sub(delta.coeffs[it->second.second], it->second.first);
        coeff_.erase(it);
    } else if (old_w != kInf && old_w < h_) {
        throw ConfigError("encoding out of sync with the graph");
    }
    if (new_w != kInf) {
        const auto w = static_cast<uint32_t>(new_w);
        if (w != new_w) throw ConfigError("integer weight expected");
        if (w < h_) {
            const uint64_t a = field_.sample(rng_);
            delta.coeffs[w] = field_.add(delta.coeffs[w], a);
            coeff_[key(u, v)] = {a, w};
        }
    }
    m_.add_to_entry(field_, u, v, delta);
    return {u, v, std::move(delta)};
}

}  // namespace dyndist
