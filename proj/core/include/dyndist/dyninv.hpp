#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dyndist/polymatrix.hpp"

namespace dyndist {

// Dynamic inverse of M = I - X*A under element updates to A, with row and
// column queries. Between resets the current inverse is represented lazily:
//
//   M_(t)^-1 = base^-1 - sum_i uhat_i vhat_i^T,
//
// where each correction pair comes from the incremental Sherman-Morrison
// identity: uhat = M_(t-1)^-1 u and vhat^T = (1 + v^T uhat)^-1 v^T M_(t-1)^-1
// for the rank-1 change u v^T. Updates must have zero constant term (they
// land in A, which is multiplied by X), which keeps the pivot 1 + v^T uhat a
// unit. After nu_cap updates the base inverse is rebuilt from the
// accumulated matrix and the correction list cleared.
class ExactInverse {
  public:
    // nu_cap == 0 disables self-resets (the owner manages them).
    ExactInverse(const PrimeField& f, const PolyMatrix& m, uint32_t nu_cap);

    uint32_t n() const { return n_; }
    uint32_t h() const { return h_; }
    uint32_t pending() const { return t_; }

    void update(uint32_t i, uint32_t j, const TruncPoly& delta);

    // Row i / column j of the current inverse.
    std::vector<TruncPoly> row(uint32_t i) const;
    std::vector<TruncPoly> col(uint32_t j) const;

    // Materialize the accumulated matrix (tests and resets).
    PolyMatrix matrix() const;

  private:
    friend class SliceInverse;

    struct Correction {
        std::vector<TruncPoly> u, v;
    };

    // Shared with SliceInverse, which computes the identical pair itself.
    void update_with(uint32_t i, uint32_t j, const TruncPoly& delta,
                     std::vector<TruncPoly> uhat, std::vector<TruncPoly> vhat);
    std::pair<std::vector<TruncPoly>, std::vector<TruncPoly>> make_pair_for(
        uint32_t i, uint32_t j, const TruncPoly& delta) const;
    void self_reset();
    // Spreadable rebuild of the base inverse from the accumulated matrix.
    void start_rebuild();
    bool rebuild_chunk(uint32_t slices);  // true once swapped in

    PrimeField field_;
    uint32_t n_, h_, cap_, t_ = 0;
    PolyMatrix binv_;
    // Content of M - I; every polynomial here has zero constant term.
    std::unordered_map<uint64_t, TruncPoly> ments_;
    std::vector<Correction> corr_;
    std::optional<NeumannRebuild> rebuild_;
};

// The slice-maintenance structure: tracks (M^-1)^[d] for d in a fixed set S
// only, instead of every coefficient. Queries subtract the d-th coefficient
// of the correction product Uhat Vhat^T, obtained as one stacked block
// product per degree. An ExactInverse runs in parallel and is updated at the
// end of each update; its row/column queries supply the correction pair for
// the next update. Resetting recomputes the tracked base slices exactly the
// way a full query for I = J = [n] would, so it costs one full-size query
// and is spreadable over rows.
class SliceInverse {
  public:
    struct Params {
        std::vector<uint32_t> degrees;  // S, sorted, duplicate-free, < h
        uint32_t mu_cap = 16;           // reset period of the slice layer
        uint32_t nu_cap = 16;           // reset period of the exact layer
    };

    SliceInverse(const PrimeField& f, const PolyMatrix& m, Params params);

    uint32_t n() const { return n_; }
    uint32_t h() const { return h_; }
    uint32_t pending() const { return t_; }
    const std::vector<uint32_t>& degrees() const { return s_; }

    void update(uint32_t i, uint32_t j, const TruncPoly& delta);

    // (current M^-1)^[d] restricted to I x J. Index sets sorted and
    // duplicate-free; d must be tracked.
    FMatrix query(const std::vector<uint32_t>& I, const std::vector<uint32_t>& J,
                  uint32_t d) const;

    // Immediate slice-layer reset (the exact layer keeps its own schedule).
    void force_reset();

    const ExactInverse& exact() const { return *exact_; }

    // Spread-reset interface used by the worst-case wrapper. The structure
    // must not receive updates between begin_reset and the last chunk. With
    // include_exact the exact layer's base is rebuilt and cleared as well.
    void begin_reset(uint32_t chunks, bool include_exact);
    bool reset_chunk();  // returns true once the reset has completed
    bool resetting() const { return job_.has_value(); }

  private:
    size_t degree_index(uint32_t d) const;
    FMatrix correction_slice(const std::vector<uint32_t>& I,
                             const std::vector<uint32_t>& J, uint32_t d) const;
    void finish_reset();

    struct ResetJob {
        uint32_t chunks = 1, next_chunk = 0;
        bool include_exact = false;
        std::vector<FMatrix> new_base;
    };

    PrimeField field_;
    uint32_t n_, h_, mu_cap_, t_ = 0;
    std::vector<uint32_t> s_;
    std::vector<FMatrix> base_;  // aligned with s_
    std::vector<std::vector<TruncPoly>> uhat_, vhat_;  // one column per update
    std::unique_ptr<ExactInverse> exact_;
    std::optional<ResetJob> job_;
};

// De-amortization wrapper: two phase-shifted copies of SliceInverse. Each
// copy cycles through (reset over mu/4 updates) -> (catch up two queued
// updates per incoming update for mu/4 updates) -> (live for mu/2 updates),
// so at every update boundary exactly one copy is live and serves queries.
// Observable behaviour is identical to a single SliceInverse; per-update
// work is bounded by a constant multiple of update cost + reset cost / mu.
class TwoCopyWrapper {
  public:
    TwoCopyWrapper(const PrimeField& f, const PolyMatrix& m,
                   SliceInverse::Params params);

    uint32_t n() const { return copies_[0].ds.n(); }
    const std::vector<uint32_t>& degrees() const { return copies_[0].ds.degrees(); }

    void update(uint32_t i, uint32_t j, const TruncPoly& delta);
    FMatrix query(const std::vector<uint32_t>& I, const std::vector<uint32_t>& J,
                  uint32_t d) const;

  private:
    struct Copy {
        Copy(const PrimeField& f, const PolyMatrix& m, SliceInverse::Params p,
             uint32_t start)
            : ds(f, m, std::move(p)), pos(start) {}
        SliceInverse ds;
        std::deque<std::tuple<uint32_t, uint32_t, TruncPoly>> queue;
        uint32_t pos;
    };

    void step(Copy& c, uint32_t i, uint32_t j, const TruncPoly& delta);
    const Copy& live() const;

    uint32_t mu_;
    std::vector<Copy> copies_;
};

}  // namespace dyndist
