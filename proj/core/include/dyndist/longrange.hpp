#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dyndist/hitting.hpp"
#include "dyndist/minplus.hpp"
#include "dyndist/shorthop.hpp"

namespace dyndist {

// A batch distance query: all pairs I x J. Sets must be sorted and
// duplicate-free with indices < n.
struct BatchQuery {
    std::vector<uint32_t> I, J;
};

struct LongRangeParams {
    uint32_t hops = 0;    // short-hop segment length n^s; 0 = balanced default
    double eps = 0.5;
    uint32_t mu_cap = 0;  // 0 = n^mu from the balanced default
    uint64_t prime = PrimeField::kDefaultPrime;
    uint64_t seed = 1;
    double confidence = 3.0;  // hitting-set constant c
    bool real_weights = false;
};

// Batch-query APSP for any hop count. A short-hop source covers segments of
// at most `hops` hops; after every update a fresh hitting set H is sampled,
// the distances D_{V,H} and D_{H,V} are queried, and
// T = D_{V,H} * closure(D_{H,H}) is precomputed so a query only needs one
// more approximate product T_{I,H} * D_{H,J} and an entry-wise min with the
// short-hop answer. Resampling H per update is what makes answers safe
// against adversaries that adapt to query output.
class ApspOracle {
  public:
    ApspOracle(const DynGraph& g, const LongRangeParams& params);

    uint32_t n() const { return short_->n(); }
    double eps() const { return eps_; }

    void update(uint32_t u, uint32_t v, double w);
    DistMatrix query(const BatchQuery& q) const;
    DistMatrix explicit_update(uint32_t u, uint32_t v, double w);

    const BatchSource& short_source() const { return *short_; }

  private:
    void rebuild();

    double eps_, layer_eps_, confidence_;
    uint32_t hops_;
    std::unique_ptr<BatchSource> short_;
    SplitMix64 rng_;
    std::vector<uint32_t> hset_;
    DistMatrix t_;    // V x H
    DistMatrix dhv_;  // H x V
};

// Explicit single-source distances. Each call samples a fresh hitting set,
// queries D_{H ∪ {source}, V}, runs Dijkstra on the overlay graph whose
// edges are those estimates, and returns the entry-wise min with the
// short-hop row.
class SsspOracle {
  public:
    SsspOracle(const DynGraph& g, const LongRangeParams& params);

    uint32_t n() const { return short_->n(); }
    void update(uint32_t u, uint32_t v, double w);
    // Distance row from `source` against the current graph version.
    std::vector<double> row(uint32_t source);
    std::vector<double> update_and_row(uint32_t source, uint32_t u, uint32_t v,
                                       double w);

  private:
    double eps_, confidence_;
    uint32_t hops_;
    std::unique_ptr<BatchSource> short_;
    SplitMix64 rng_;
};

// Undirected integer-weighted oracle. The short-hop layer tracks values up
// to W*hops; every node is assigned a hub x_v within queried distance
// 0.25*W*hops*eps_a, hub-to-hub distances are closed approximately, and a
// far pair (u,v) is answered by Delta[x_u, x_v] + 0.5*W*hops*eps_a (or
// infinity when an endpoint has no hub, which only happens when it has no
// far finite partner at all).
class UndirectedOracle {
  public:
    UndirectedOracle(const DynGraph& g, const LongRangeParams& params);

    uint32_t n() const { return short_->n(); }
    double eps() const { return eps_; }

    void update(uint32_t u, uint32_t v, double w);
    DistMatrix query(const BatchQuery& q) const;

    const BatchSource& short_source() const { return *short_; }

  private:
    void rebuild();

    double eps_, eps_stage_, confidence_, slack_;
    uint32_t hops_;
    double weight_cap_;
    std::unique_ptr<ShortHopOracle> short_;
    SplitMix64 rng_;
    std::vector<uint32_t> hset_;
    std::vector<int64_t> assign_;  // index into hset_, -1 = no hub
    DistMatrix delta_;             // H x H approximate closure
};

// Shared helpers.
std::vector<uint32_t> all_nodes(uint32_t n);
void check_batch_query(const BatchQuery& q, uint32_t n);

}  // namespace dyndist
