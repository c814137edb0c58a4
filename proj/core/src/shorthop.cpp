#include "dyndist/shorthop.hpp"

#include <algorithm>
#include <cmath>

#include "dyndist/errors.hpp"

namespace dyndist {

std::vector<uint32_t> ShortHopOracle::threshold_set(uint64_t bound, double eps) {
    if (bound == 0) throw ConfigError("distance bound must be positive");
    if (eps <= 0.0) throw ConfigError("approximation parameter must be positive");
    std::vector<uint32_t> s;
    const double top = std::ceil(std::log(double(bound)) / std::log1p(eps));
    for (double i = 0; i <= top; i += 1.0) {
        const double v = std::floor(std::pow(1.0 + eps, i));
        if (v > double(bound)) break;
        s.push_back(static_cast<uint32_t>(v));
    }
    s.push_back(static_cast<uint32_t>(bound));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

ShortHopOracle::ShortHopOracle(const DynGraph& g, const ShortHopParams& params)
    : graph_(g), bound_(params.bound), field_(params.prime) {
    if (!g.integer_weights())
        throw ConfigError("integer-weight oracle fed non-integer weights");
    const uint32_t h = static_cast<uint32_t>(bound_ + 1);
    // Keep the Schwartz-Zippel failure budget h*n^2/p far below one.
    const double budget = double(h) * double(g.n()) * double(g.n());
    if (double(field_.p()) < budget * 1048576.0)
        throw ConfigError("field modulus too small for this instance");

    thresholds_ = threshold_set(bound_, params.eps);
    SplitMix64 master(params.seed);
    enc_ = std::make_unique<GraphEncoding>(g, h, field_, master.fork());
    SliceInverse::Params sp;
    sp.degrees = thresholds_;
    sp.mu_cap = params.mu_cap;
    sp.nu_cap = params.nu_cap;
    ds_ = std::make_unique<TwoCopyWrapper>(field_, enc_->matrix(), sp);
}

void ShortHopOracle::update(uint32_t u, uint32_t v, double w) {
    if (w != kInf && w != std::floor(w))
        throw ConfigError("integer-weight oracle fed non-integer weights");
    const double old_w = graph_.weight(u, v);
    graph_.set_weight(u, v, w);
    ElementUpdate eu = enc_->edge_update(u, v, old_w, w);
    ds_->update(eu.i, eu.j, eu.delta);
    if (!graph_.directed()) {
        // Undirected edges live as two arcs in the encoding.
        ElementUpdate eu2 = enc_->edge_update(v, u, old_w, w);
        ds_->update(eu2.i, eu2.j, eu2.delta);
    }
}

DistMatrix ShortHopOracle::batch(const std::vector<uint32_t>& I,
                                 const std::vector<uint32_t>& J) const {
    DistMatrix res(static_cast<uint32_t>(I.size()),
                   static_cast<uint32_t>(J.size()), kInf);
    for (uint32_t i = 0; i < res.rows; ++i)
        for (uint32_t j = 0; j < res.cols; ++j)
            if (I[i] == J[j]) res.at(i, j) = 0.0;

    size_t unresolved = 0;
    for (double v : res.data) unresolved += (v == kInf);

    // Smallest threshold first; each tracked degree answers the pairs whose
    // slice entry is nonzero and that no smaller threshold resolved.
    for (uint32_t d : thresholds_) {
        if (unresolved == 0) break;
        const FMatrix slice = ds_->query(I, J, d);
        for (uint32_t i = 0; i < res.rows; ++i)
            for (uint32_t j = 0; j < res.cols; ++j) {
                if (res.at(i, j) != kInf) continue;
                if (slice.at(i, j) != 0) {
                    res.at(i, j) = static_cast<double>(d);
                    --unresolved;
                }
            }
    }
    return res;
}

// ---------------------------------------------------------------------------
// RealShortHopOracle

double RealShortHopOracle::rounded_weight(double w, double b) const {
    if (w == kInf || w > b) return kInf;
    return std::ceil(scale_a_ * w / b);
}

RealShortHopOracle::RealShortHopOracle(const DynGraph& g,
                                       const RealShortHopParams& params)
    : graph_(g), hops_(params.hop_bound) {
    if (hops_ == 0) throw ConfigError("hop bound must be positive");
    if (params.eps <= 0.0)
        throw ConfigError("approximation parameter must be positive");

    // Split eps between weight rounding and the threshold grid so the
    // composed factor stays at (1+eps).
    eps_rounding_ = std::sqrt(1.0 + params.eps) - 1.0;
    scale_a_ = 2.0 * double(hops_) / eps_rounding_;

    const double nw = std::max(2.0, double(g.n()) * g.weight_cap());
    const int top = static_cast<int>(std::ceil(std::log2(nw)));
    const uint64_t bound = static_cast<uint64_t>(
        std::max(std::ceil(3.0 * double(hops_) / eps_rounding_),
                 std::ceil(scale_a_) + double(hops_)));

    SplitMix64 master(params.seed);
    scales_.reserve(top);
    for (int i = 1; i <= top; ++i) {
        const double b = std::ldexp(1.0, i);
        DynGraph rounded(g.n(), g.directed(), std::ceil(scale_a_) + 1.0);
        for (const auto& e : g.edges()) {
            const double rw = rounded_weight(e.w, b);
            if (rw != kInf) rounded.set_weight(e.u, e.v, rw);
        }
        ShortHopParams sp;
        sp.bound = bound;
        sp.eps = eps_rounding_;
        sp.mu_cap = params.mu_cap;
        sp.nu_cap = params.nu_cap;
        sp.prime = params.prime;
        sp.seed = master.fork();
        Scale s{b, nullptr};
        s.oracle = std::make_unique<ShortHopOracle>(rounded, sp);
        scales_.push_back(std::move(s));
    }
}

void RealShortHopOracle::update(uint32_t u, uint32_t v, double w) {
    graph_.set_weight(u, v, w);
    for (Scale& s : scales_) {
        s.oracle->update(u, v, rounded_weight(w, s.b));
    }
}

DistMatrix RealShortHopOracle::batch(const std::vector<uint32_t>& I,
                                     const std::vector<uint32_t>& J) const {
    DistMatrix best(static_cast<uint32_t>(I.size()),
                    static_cast<uint32_t>(J.size()), kInf);
    for (const Scale& s : scales_) {
        const DistMatrix est = s.oracle->batch(I, J);
        const double descale = s.b / scale_a_;
        for (size_t idx = 0; idx < best.data.size(); ++idx) {
            if (est.data[idx] == kInf) continue;
            best.data[idx] = std::min(best.data[idx], est.data[idx] * descale);
        }
    }
    return best;
}

}  // namespace dyndist
