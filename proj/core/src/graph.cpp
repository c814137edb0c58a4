#include "dyndist/graph.hpp"

#include <cmath>

#include "dyndist/errors.hpp"

namespace dyndist {

void DynGraph::set_one(uint32_t u, uint32_t v, double w) {
    if (w == kInf) {
        edges_.erase(key(u, v));
    } else {
        edges_[key(u, v)] = w;
    }
}

void DynGraph::set_weight(uint32_t u, uint32_t v, double w) {
    if (u >= n_ || v >= n_) throw IndexOutOfRange("edge endpoint out of range");
    if (u == v) throw ConfigError("self loops are not representable");
    if (w != kInf && (w < 1.0 || w > w_cap_))
        throw ConfigError("edge weight outside [1, W]");
    set_one(u, v, w);
    if (!directed_) set_one(v, u, w);
}

std::vector<DynGraph::Edge> DynGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const auto& [k, w] : edges_)
        out.push_back({uint32_t(k >> 32), uint32_t(k & 0xffffffffu), w});
    return out;
}

std::vector<std::vector<std::pair<uint32_t, double>>> DynGraph::adjacency() const {
    std::vector<std::vector<std::pair<uint32_t, double>>> adj(n_);
    for (const auto& [k, w] : edges_)
        adj[k >> 32].emplace_back(uint32_t(k & 0xffffffffu), w);
    return adj;
}

std::vector<std::vector<std::pair<uint32_t, double>>>
DynGraph::reverse_adjacency() const {
    std::vector<std::vector<std::pair<uint32_t, double>>> adj(n_);
    for (const auto& [k, w] : edges_)
        adj[k & 0xffffffffu].emplace_back(uint32_t(k >> 32), w);
    return adj;
}

bool DynGraph::integer_weights() const {
    for (const auto& [k, w] : edges_) {
        (void)k;
        if (w != std::floor(w)) return false;
    }
    return true;
}

}  // namespace dyndist
