#include "dyndist/hitting.hpp"

#include <algorithm>
#include <cmath>

#include "dyndist/errors.hpp"

namespace dyndist {

std::vector<uint32_t> sample_nodes(uint32_t n, uint32_t k, SplitMix64& rng) {
    k = std::min(k, n);
    // Partial Fisher-Yates over an index array.
    std::vector<uint32_t> pool(n);
    for (uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (uint32_t i = 0; i < k; ++i) {
        const uint32_t j = i + static_cast<uint32_t>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

HittingSet sample_hitting_set(uint32_t n, double d, double c, SplitMix64& rng) {
    if (d < 1.0) throw ConfigError("hitting-set hop bound must be >= 1");
    const double want = c * (double(n) / d) * std::log(double(std::max<uint32_t>(n, 1)));
    const uint32_t k = n == 0 ? 0
                              : std::min<uint64_t>(n, static_cast<uint64_t>(
                                                          std::ceil(want)));
    HittingSet hs;
    hs.hop_bound = static_cast<uint32_t>(d);
    hs.confidence = c;
    hs.nodes = sample_nodes(n, k, rng);
    return hs;
}

namespace {
// Reachable set from 0 over the given adjacency.
std::vector<char> reach(const std::vector<std::vector<std::pair<uint32_t, double>>>& adj) {
    std::vector<char> seen(adj.size(), 0);
    if (adj.empty()) return seen;
    std::vector<uint32_t> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
        const uint32_t u = stack.back();
        stack.pop_back();
        for (const auto& [v, w] : adj[u]) {
            (void)w;
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    return seen;
}
}  // namespace

bool is_strongly_connected(const DynGraph& g) {
    if (g.n() <= 1) return true;
    const auto fwd = reach(g.adjacency());
    for (char s : fwd)
        if (!s) return false;
    const auto bwd = reach(g.reverse_adjacency());
    for (char s : bwd)
        if (!s) return false;
    return true;
}

}  // namespace dyndist
