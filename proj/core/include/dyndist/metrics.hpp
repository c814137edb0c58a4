#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>
#include <vector>

#include "dyndist/dyninv.hpp"
#include "dyndist/encoding.hpp"
#include "dyndist/graph.hpp"
#include "dyndist/longrange.hpp"

namespace dyndist {

// Read-only distance view bound to one oracle version. Every row/column is
// fetched through one batch query and memoized, so repeated queries inside a
// metric computation see fixed values regardless of the order they are asked
// in. `value_bound` mirrors the underlying source; batch results that come
// back infinite while a finite bound is in force set the overflow flag,
// which is how the F.1-style algorithms detect that they must fall back to
// the sampling path.
class MetricSnapshot {
  public:
    using QueryFn = std::function<DistMatrix(const std::vector<uint32_t>&,
                                             const std::vector<uint32_t>&)>;

    MetricSnapshot(uint32_t n, double value_bound, QueryFn query);

    uint32_t n() const { return n_; }
    double value_bound() const { return bound_; }
    bool overflowed() const { return overflow_; }

    const std::vector<double>& row_from(uint32_t u);
    const std::vector<double>& col_to(uint32_t u);
    void prefetch_rows(const std::vector<uint32_t>& us);
    void prefetch_cols(const std::vector<uint32_t>& us);

    static MetricSnapshot of(const BatchSource& src);
    static MetricSnapshot of(const ApspOracle& o);
    static MetricSnapshot of(const UndirectedOracle& o);

  private:
    uint32_t n_;
    double bound_;
    QueryFn query_;
    bool overflow_ = false;
    std::unordered_map<uint32_t, std::vector<double>> rows_, cols_;
};

struct MetricConfig {
    double eps = 0.1;
    uint32_t fallback_hops = 8;  // d in the G_H sampling lemma
    double weight_cap = 1.0;     // W
    uint64_t seed = 1;
    double confidence = 3.0;
};

struct DiameterEstimate {
    double value = 0.0;
    enum class Mode { Small, Sampled, Disconnected } mode = Mode::Small;
};

// Nearly-1.5 approximate diameter for unweighted digraphs: anchor sampling
// (sqrt(n) random sources, the node farthest from them, and its sqrt(n)
// nearest neighbours), largest queried distance wins. Falls back to the
// hitting-set sampling path when any queried distance overflows the
// snapshot's tracked range. Guarantees w.h.p.
//   (2/3 - eps) * diam - 1/3 <= value <= (1 + eps) * diam.
DiameterEstimate diameter_15(MetricSnapshot& snap, const DynGraph& g,
                             const MetricConfig& cfg);

// (1+eps)-approximate diameter for graphs with diameter >= W*d: distances
// between sampled hubs close approximately, plus additive slack W*d*eps.
DiameterEstimate diameter_1eps(MetricSnapshot& snap, const DynGraph& g,
                               const MetricConfig& cfg);

// Radius analogues (undirected input). radius_15 returns the minimum anchor
// depth; w.h.p. R <= value <= ((1.5+eps)R + 2/3)(1+eps).
double radius_15(MetricSnapshot& snap, const DynGraph& g,
                 const MetricConfig& cfg);
double radius_1eps(MetricSnapshot& snap, const DynGraph& g,
                   const MetricConfig& cfg);

// Nearly-(5/3) eccentricities for undirected connected graphs; per node
// (3-6eps)/5 * ecc - 4/7 <= value <= (1+2eps) * ecc w.h.p. Disconnected
// inputs yield all-infinity.
std::vector<double> eccentricities_35(MetricSnapshot& snap, const DynGraph& g,
                                      const MetricConfig& cfg);

// (1 +- eps) closeness centralities for undirected unweighted graphs;
// disconnected inputs yield all zeros. Samples
// k = min(n, ceil(4 n^(2/3) / eps^2 * ln n)) source rows.
std::vector<double> closeness_all(MetricSnapshot& snap, const DynGraph& g,
                                  const MetricConfig& cfg);

struct ExactDiameterParams {
    uint32_t hops = 0;    // n^s; 0 = balanced default
    uint32_t mu_cap = 0;  // 0 = n^mu default
    uint64_t prime = PrimeField::kDefaultPrime;
    uint64_t seed = 1;
    double confidence = 3.0;
};

// Exact dynamic diameter for integer weights <= W. Tracks every coefficient
// slice up to W*hops. If all pairs resolve within the bound the diameter is
// found by binary search over the slice index; otherwise the unresolved
// pairs (all with >= hops hops on their shortest paths) are answered exactly
// by Dijkstra trees from a hitting set. Correct w.h.p.; infinite when the
// graph is not strongly connected. Pair bookkeeping uses an n^2 bitset, so
// n is capped at 2^13.
class ExactDiameterEngine {
  public:
    ExactDiameterEngine(const DynGraph& g, const ExactDiameterParams& params);

    uint32_t n() const { return graph_.n(); }
    void update(uint32_t u, uint32_t v, double w);
    double diameter();

  private:
    bool slice_all_reachable(uint32_t d, std::vector<uint64_t>* misses);

    DynGraph graph_;
    uint32_t hops_;
    uint64_t bound_;
    double confidence_;
    PrimeField field_;
    SplitMix64 rng_;
    std::unique_ptr<GraphEncoding> enc_;
    std::unique_ptr<TwoCopyWrapper> ds_;
};

}  // namespace dyndist
