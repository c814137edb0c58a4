#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

namespace dyndist {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Directed or undirected graph with edge weights in [1, W]; an absent entry
// means weight infinity. Self loops are never stored (the algebraic encoding
// adds its own). For undirected graphs both orientations are kept in the map
// so that iteration and updates stay uniform.
class DynGraph {
  public:
    DynGraph(uint32_t n, bool directed, double weight_cap)
        : n_(n), directed_(directed), w_cap_(weight_cap) {}

    uint32_t n() const { return n_; }
    bool directed() const { return directed_; }
    double weight_cap() const { return w_cap_; }

    double weight(uint32_t u, uint32_t v) const {
        auto it = edges_.find(key(u, v));
        return it == edges_.end() ? kInf : it->second;
    }

    // Set weight w in [1, W] or kInf to delete. Validates the range.
    void set_weight(uint32_t u, uint32_t v, double w);

    size_t edge_count() const { return edges_.size(); }

    struct Edge {
        uint32_t u, v;
        double w;
    };
    std::vector<Edge> edges() const;

    // Outgoing adjacency (u -> list of (v, w)); rebuilt on demand.
    std::vector<std::vector<std::pair<uint32_t, double>>> adjacency() const;
    std::vector<std::vector<std::pair<uint32_t, double>>> reverse_adjacency() const;

    bool integer_weights() const;

  private:
    uint64_t key(uint32_t u, uint32_t v) const {
        return (uint64_t(u) << 32) | v;
    }
    void set_one(uint32_t u, uint32_t v, double w);

    uint32_t n_;
    bool directed_;
    double w_cap_;
    std::unordered_map<uint64_t, double> edges_;
};

}  // namespace dyndist
