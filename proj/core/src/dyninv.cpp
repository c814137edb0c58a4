#include "dyndist/dyninv.hpp"

#include <cassert>

#include "dyndist/errors.hpp"

namespace dyndist {

namespace {
uint64_t key(uint32_t i, uint32_t j) { return (uint64_t(i) << 32) | j; }

void check_index_set(const std::vector<uint32_t>& s, uint32_t n,
                     const char* what) {
    for (size_t k = 0; k < s.size(); ++k) {
        if (s[k] >= n || (k > 0 && s[k] <= s[k - 1]))
            throw IndexOutOfRange(std::string(what) +
                                  " must be sorted, duplicate-free, in range");
    }
}

std::vector<uint32_t> iota_set(uint32_t n) {
    std::vector<uint32_t> v(n);
    for (uint32_t i = 0; i < n; ++i) v[i] = i;
    return v;
}
}  // namespace

// ---------------------------------------------------------------------------
// ExactInverse

ExactInverse::ExactInverse(const PrimeField& f, const PolyMatrix& m,
                           uint32_t nu_cap)
    : field_(f), n_(m.rows), h_(m.h), cap_(nu_cap) {
    binv_ = neumann_inverse_iterative(f, m);  // validates the I - X*A form
    for (uint32_t k = 1; k < h_; ++k) {
        for (uint32_t i = 0; i < n_; ++i)
            for (uint32_t j = 0; j < n_; ++j) {
                const uint64_t v = m.slices[k].at(i, j);
                if (v == 0) continue;
                auto [it, fresh] = ments_.try_emplace(key(i, j), TruncPoly(h_));
                (void)fresh;
                it->second.coeffs[k] = v;
            }
    }
}

std::pair<std::vector<TruncPoly>, std::vector<TruncPoly>>
ExactInverse::make_pair_for(uint32_t i, uint32_t j,
                            const TruncPoly& delta) const {
    // u = e_i, v = delta * e_j. uhat is column i of the current inverse;
    // vhat is row j scaled by (1 + v^T uhat)^-1 * delta.
    std::vector<TruncPoly> uhat = col(i);
    std::vector<TruncPoly> rowj = row(j);

    TruncPoly sigma = poly_mul(field_, delta, uhat[j]);
    sigma.coeffs[0] = field_.add(sigma.coeffs[0], 1);
    if (sigma.coeffs[0] != 1)
        throw SingularPivot("pivot lost its unit constant term");
    const TruncPoly factor = poly_mul(field_, poly_inv_unit(field_, sigma), delta);

    std::vector<TruncPoly> vhat(n_, TruncPoly(h_));
    for (uint32_t k = 0; k < n_; ++k) vhat[k] = poly_mul(field_, factor, rowj[k]);
    assert(h_ == 0 || factor.coeffs[0] == 0);
    return {std::move(uhat), std::move(vhat)};
}

void ExactInverse::update(uint32_t i, uint32_t j, const TruncPoly& delta) {
    if (i >= n_ || j >= n_) throw IndexOutOfRange("element update out of range");
    if (delta.h() != h_) throw DegreeMismatch("update degree bound mismatch");
    if (delta.coeffs[0] != 0)
        throw ConstantTermUpdate("element updates must have zero constant term");
    auto [uhat, vhat] = make_pair_for(i, j, delta);
    update_with(i, j, delta, std::move(uhat), std::move(vhat));
}

void ExactInverse::update_with(uint32_t i, uint32_t j, const TruncPoly& delta,
                               std::vector<TruncPoly> uhat,
                               std::vector<TruncPoly> vhat) {
    corr_.push_back({std::move(uhat), std::move(vhat)});
    auto [it, fresh] = ments_.try_emplace(key(i, j), TruncPoly(h_));
    if (!fresh) {
        it->second = poly_add(field_, it->second, delta);
        if (it->second.is_zero()) ments_.erase(it);
    } else {
        it->second = delta;
    }
    ++t_;
    if (cap_ != 0 && t_ >= cap_) self_reset();
}

std::vector<TruncPoly> ExactInverse::row(uint32_t i) const {
    if (i >= n_) throw IndexOutOfRange("row index out of range");
    std::vector<TruncPoly> out(n_, TruncPoly(h_));
    for (uint32_t k = 0; k < n_; ++k)
        for (uint32_t d = 0; d < h_; ++d)
            out[k].coeffs[d] = binv_.slices[d].at(i, k);
    for (const Correction& c : corr_) {
        const TruncPoly& scale = c.u[i];
        if (scale.is_zero()) continue;
        for (uint32_t k = 0; k < n_; ++k) {
            if (c.v[k].is_zero()) continue;
            out[k] = poly_sub(field_, out[k], poly_mul(field_, scale, c.v[k]));
        }
    }
    return out;
}

std::vector<TruncPoly> ExactInverse::col(uint32_t j) const {
    if (j >= n_) throw IndexOutOfRange("column index out of range");
    std::vector<TruncPoly> out(n_, TruncPoly(h_));
    for (uint32_t k = 0; k < n_; ++k)
        for (uint32_t d = 0; d < h_; ++d)
            out[k].coeffs[d] = binv_.slices[d].at(k, j);
    for (const Correction& c : corr_) {
        const TruncPoly& scale = c.v[j];
        if (scale.is_zero()) continue;
        for (uint32_t k = 0; k < n_; ++k) {
            if (c.u[k].is_zero()) continue;
            out[k] = poly_sub(field_, out[k], poly_mul(field_, c.u[k], scale));
        }
    }
    return out;
}

PolyMatrix ExactInverse::matrix() const {
    PolyMatrix m = PolyMatrix::identity(n_, h_);
    for (const auto& [k, p] : ments_)
        m.add_to_entry(field_, uint32_t(k >> 32), uint32_t(k & 0xffffffffu), p);
    return m;
}

void ExactInverse::self_reset() {
    start_rebuild();
    rebuild_chunk(h_);
}

void ExactInverse::start_rebuild() {
    std::vector<std::tuple<uint32_t, uint32_t, TruncPoly>> entries;
    entries.reserve(ments_.size());
    for (const auto& [k, p] : ments_)
        entries.emplace_back(uint32_t(k >> 32), uint32_t(k & 0xffffffffu), p);
    rebuild_.emplace(field_, n_, h_, entries);
}

bool ExactInverse::rebuild_chunk(uint32_t slices) {
    if (!rebuild_.has_value()) return true;  // already swapped in
    if (!rebuild_->advance(slices)) return false;
    binv_ = rebuild_->take();
    rebuild_.reset();
    corr_.clear();
    t_ = 0;
    return true;
}

// ---------------------------------------------------------------------------
// SliceInverse

SliceInverse::SliceInverse(const PrimeField& f, const PolyMatrix& m,
                           Params params)
    : field_(f),
      n_(m.rows),
      h_(m.h),
      mu_cap_(params.mu_cap),
      s_(std::move(params.degrees)) {
    for (size_t k = 0; k < s_.size(); ++k) {
        if (s_[k] >= h_ || (k > 0 && s_[k] <= s_[k - 1]))
            throw DegreeMismatch("tracked degree set must be sorted and < h");
    }
    exact_ = std::make_unique<ExactInverse>(f, m, params.nu_cap);
    base_.reserve(s_.size());
    for (uint32_t d : s_) base_.push_back(exact_->binv_.slices[d]);
}

size_t SliceInverse::degree_index(uint32_t d) const {
    auto it = std::lower_bound(s_.begin(), s_.end(), d);
    if (it == s_.end() || *it != d)
        throw DegreeNotTracked("degree is not in the tracked set");
    return static_cast<size_t>(it - s_.begin());
}

void SliceInverse::update(uint32_t i, uint32_t j, const TruncPoly& delta) {
    assert(!job_.has_value());
    if (i >= n_ || j >= n_) throw IndexOutOfRange("element update out of range");
    if (delta.h() != h_) throw DegreeMismatch("update degree bound mismatch");
    if (delta.coeffs[0] != 0)
        throw ConstantTermUpdate("element updates must have zero constant term");

    // The correction pair is read from the exact structure *before* it sees
    // this update, then shared with it so the work happens once.
    auto [uhat, vhat] = exact_->make_pair_for(i, j, delta);
    assert(h_ == 0 || [&] {
        for (const TruncPoly& p : vhat)
            if (p.coeffs[0] != 0) return false;
        return true;
    }());
    uhat_.push_back(uhat);
    vhat_.push_back(vhat);
    exact_->update_with(i, j, delta, std::move(uhat), std::move(vhat));
    ++t_;
    if (mu_cap_ != 0 && t_ >= mu_cap_) force_reset();
}

FMatrix SliceInverse::correction_slice(const std::vector<uint32_t>& I,
                                       const std::vector<uint32_t>& J,
                                       uint32_t d) const {
    const uint32_t t = static_cast<uint32_t>(uhat_.size());
    const uint32_t width = t * (d + 1);
    FMatrix us(static_cast<uint32_t>(I.size()), width);
    FMatrix vs(static_cast<uint32_t>(J.size()), width);
    for (uint32_t deg = 0; deg <= d; ++deg) {
        for (uint32_t c = 0; c < t; ++c) {
            const size_t col = size_t(deg) * t + c;
            for (uint32_t r = 0; r < us.rows; ++r)
                us.at(r, static_cast<uint32_t>(col)) =
                    uhat_[c][I[r]].coeffs[deg];
            for (uint32_t r = 0; r < vs.rows; ++r)
                vs.at(r, static_cast<uint32_t>(col)) =
                    vhat_[c][J[r]].coeffs[d - deg];
        }
    }
    return fm_mul_abt(field_, us, vs);
}

FMatrix SliceInverse::query(const std::vector<uint32_t>& I,
                            const std::vector<uint32_t>& J, uint32_t d) const {
    check_index_set(I, n_, "row index set");
    check_index_set(J, n_, "column index set");
    const size_t idx = degree_index(d);
    FMatrix out = fm_submatrix(base_[idx], I, J);
    if (!uhat_.empty()) out = fm_sub(field_, out, correction_slice(I, J, d));
    return out;
}

void SliceInverse::force_reset() {
    begin_reset(1, false);
    reset_chunk();
}

void SliceInverse::begin_reset(uint32_t chunks, bool include_exact) {
    assert(!job_.has_value());
    ResetJob job;
    job.chunks = chunks == 0 ? 1 : chunks;
    job.include_exact = include_exact;
    job.new_base = base_;
    if (include_exact) exact_->start_rebuild();
    job_ = std::move(job);
}

bool SliceInverse::reset_chunk() {
    assert(job_.has_value());
    ResetJob& job = *job_;
    // Ceiling division: the chunk count always covers every block-row.
    const uint32_t per = (n_ + job.chunks - 1) / job.chunks;
    const uint32_t r0 = std::min(n_, job.next_chunk * per);
    const uint32_t r1 = std::min(n_, r0 + per);
    if (r0 < r1 && t_ > 0) {
        std::vector<uint32_t> rows(r1 - r0);
        for (uint32_t i = r0; i < r1; ++i) rows[i - r0] = i;
        const std::vector<uint32_t> all = iota_set(n_);
        for (size_t idx = 0; idx < s_.size(); ++idx) {
            const FMatrix block = correction_slice(rows, all, s_[idx]);
            for (uint32_t i = r0; i < r1; ++i)
                for (uint32_t j = 0; j < n_; ++j)
                    job.new_base[idx].at(i, j) = field_.sub(
                        job.new_base[idx].at(i, j), block.at(i - r0, j));
        }
    }
    if (job.include_exact) {
        const uint32_t per_slices = h_ == 0 ? 1 : (h_ + job.chunks - 1) / job.chunks;
        exact_->rebuild_chunk(per_slices);
    }
    ++job.next_chunk;
    if (job.next_chunk >= job.chunks) {
        finish_reset();
        return true;
    }
    return false;
}

void SliceInverse::finish_reset() {
    ResetJob& job = *job_;
    base_ = std::move(job.new_base);
    if (job.include_exact) {
        // The slice-count schedule finishes the exact rebuild no later than
        // the last chunk; force completion for the rounding corner.
        exact_->rebuild_chunk(h_);
    }
    uhat_.clear();
    vhat_.clear();
    t_ = 0;
    job_.reset();
}

// ---------------------------------------------------------------------------
// TwoCopyWrapper

TwoCopyWrapper::TwoCopyWrapper(const PrimeField& f, const PolyMatrix& m,
                               SliceInverse::Params params) {
    mu_ = params.mu_cap < 4 ? 4 : (params.mu_cap + 3) / 4 * 4;
    SliceInverse::Params inner = params;
    inner.mu_cap = 0;  // the wrapper schedules every reset
    inner.nu_cap = 0;
    copies_.reserve(2);
    copies_.emplace_back(f, m, inner, mu_ / 2);  // live first
    copies_.emplace_back(f, m, inner, 0);        // resets first
}

void TwoCopyWrapper::step(Copy& c, uint32_t i, uint32_t j,
                          const TruncPoly& delta) {
    const uint32_t q1 = mu_ / 4, q2 = mu_ / 2;
    if (c.pos == 0) c.ds.begin_reset(q1, /*include_exact=*/true);
    if (c.pos < q1) {
        c.queue.emplace_back(i, j, delta);
        c.ds.reset_chunk();
    } else if (c.pos < q2) {
        c.queue.emplace_back(i, j, delta);
        for (int k = 0; k < 2 && !c.queue.empty(); ++k) {
            auto [qi, qj, qd] = std::move(c.queue.front());
            c.queue.pop_front();
            c.ds.update(qi, qj, qd);
        }
    } else {
        assert(c.queue.empty());
        c.ds.update(i, j, delta);
    }
    c.pos = (c.pos + 1) % mu_;
}

void TwoCopyWrapper::update(uint32_t i, uint32_t j, const TruncPoly& delta) {
    for (Copy& c : copies_) step(c, i, j, delta);
}

const TwoCopyWrapper::Copy& TwoCopyWrapper::live() const {
    const uint32_t q2 = mu_ / 2;
    for (const Copy& c : copies_)
        if (c.pos >= q2) return c;
    // Unreachable: the copies are phase-shifted by mu/2.
    return copies_[0];
}

FMatrix TwoCopyWrapper::query(const std::vector<uint32_t>& I,
                              const std::vector<uint32_t>& J, uint32_t d) const {
    return live().ds.query(I, J, d);
}

}  // namespace dyndist
