#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dyndist/dist_matrix.hpp"
#include "dyndist/dyninv.hpp"
#include "dyndist/encoding.hpp"
#include "dyndist/graph.hpp"

namespace dyndist {

// Anything that answers batch distance queries under edge updates.
class BatchSource {
  public:
    virtual ~BatchSource() = default;
    virtual uint32_t n() const = 0;
    virtual void update(uint32_t u, uint32_t v, double w) = 0;
    virtual DistMatrix batch(const std::vector<uint32_t>& I,
                             const std::vector<uint32_t>& J) const = 0;
    // Largest distance value for which the (1+eps) guarantee holds; kInf
    // when the source covers every finite distance.
    virtual double value_bound() const = 0;
};

struct ShortHopParams {
    uint64_t bound = 8;      // largest tracked distance value; h = bound + 1
    double eps = 0.5;        // threshold-grid stretch
    uint32_t mu_cap = 16;    // slice-layer reset period
    uint32_t nu_cap = 16;    // exact-layer reset period
    uint64_t prime = PrimeField::kDefaultPrime;
    uint64_t seed = 1;
};

// Dynamic bounded-value distance oracle for integer weights. Maintains the
// tracked coefficient slices of the encoded inverse for the geometric
// threshold set
//   S = dedup{ floor((1+eps)^i) } up to `bound`, plus bound itself,
// and answers a pair with the smallest threshold whose slice is nonzero.
// Estimates never undercut the true distance; for pairs with distance at
// most `bound` they are within (1+eps) w.h.p. Pairs with no nonzero
// threshold come back infinite.
class ShortHopOracle : public BatchSource {
  public:
    ShortHopOracle(const DynGraph& g, const ShortHopParams& params);

    uint32_t n() const override { return graph_.n(); }
    void update(uint32_t u, uint32_t v, double w) override;
    DistMatrix batch(const std::vector<uint32_t>& I,
                     const std::vector<uint32_t>& J) const override;
    double value_bound() const override { return static_cast<double>(bound_); }

    const std::vector<uint32_t>& thresholds() const { return thresholds_; }
    const DynGraph& graph() const { return graph_; }

    static std::vector<uint32_t> threshold_set(uint64_t bound, double eps);

  private:
    DynGraph graph_;
    uint64_t bound_;
    PrimeField field_;
    std::vector<uint32_t> thresholds_;
    std::unique_ptr<GraphEncoding> enc_;
    std::unique_ptr<TwoCopyWrapper> ds_;
};

struct RealShortHopParams {
    uint32_t hop_bound = 8;  // n^s in the analysis
    double eps = 0.5;
    uint32_t mu_cap = 16;
    uint32_t nu_cap = 16;
    uint64_t prime = PrimeField::kDefaultPrime;
    uint64_t seed = 1;
};

// Real weights in [1, W] via the scaling bank: one rounded integer graph per
// scale B_i = 2^i with weights ceil(A*c/B_i), A = 2*hop_bound/eps', edges
// heavier than B_i dropped. A query descales each scale's estimate by B_i/A
// and takes the minimum, which never undercuts the true distance and is
// within (1+eps) whenever the shortest path has at most hop_bound hops.
class RealShortHopOracle : public BatchSource {
  public:
    RealShortHopOracle(const DynGraph& g, const RealShortHopParams& params);

    uint32_t n() const override { return graph_.n(); }
    void update(uint32_t u, uint32_t v, double w) override;
    DistMatrix batch(const std::vector<uint32_t>& I,
                     const std::vector<uint32_t>& J) const override;
    double value_bound() const override { return kInf; }

    uint32_t hop_bound() const { return hops_; }
    size_t scale_count() const { return scales_.size(); }
    const DynGraph& graph() const { return graph_; }

  private:
    struct Scale {
        double b;  // 2^i
        std::unique_ptr<ShortHopOracle> oracle;
    };
    double rounded_weight(double w, double b) const;  // kInf if w > b

    DynGraph graph_;
    uint32_t hops_;
    double scale_a_;      // A
    double eps_rounding_; // per-stage share of eps
    std::vector<Scale> scales_;
};

}  // namespace dyndist
