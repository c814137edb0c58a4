#pragma once

#include <cstdint>
#include <vector>

#include "dyndist/graph.hpp"
#include "dyndist/rng.hpp"

namespace dyndist {

// Random node subset of size min(n, ceil(c * (n/d) * ln n)). With
// probability at least 1 - n^(2-c), every shortest path of at least d hops
// passes within d hops of a sampled node, so long paths decompose into
// segments of at most d hops between sampled nodes.
struct HittingSet {
    std::vector<uint32_t> nodes;  // sorted, duplicate-free
    uint32_t hop_bound = 0;
    double confidence = 0.0;
};

HittingSet sample_hitting_set(uint32_t n, double d, double c, SplitMix64& rng);

// Uniform sample of k distinct nodes, sorted.
std::vector<uint32_t> sample_nodes(uint32_t n, uint32_t k, SplitMix64& rng);

// Double graph search (forward + backward from node 0). For undirected
// graphs this degenerates to plain connectivity.
bool is_strongly_connected(const DynGraph& g);

}  // namespace dyndist
