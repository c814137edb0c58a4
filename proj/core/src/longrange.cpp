#include "dyndist/longrange.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "dyndist/complexity.hpp"
#include "dyndist/errors.hpp"

namespace dyndist {

std::vector<uint32_t> all_nodes(uint32_t n) {
    std::vector<uint32_t> v(n);
    for (uint32_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

void check_batch_query(const BatchQuery& q, uint32_t n) {
    for (size_t k = 0; k < q.I.size(); ++k)
        if (q.I[k] >= n || (k > 0 && q.I[k] <= q.I[k - 1]))
            throw IndexOutOfRange("query set I invalid");
    for (size_t k = 0; k < q.J.size(); ++k)
        if (q.J[k] >= n || (k > 0 && q.J[k] <= q.J[k - 1]))
            throw IndexOutOfRange("query set J invalid");
}

namespace {
uint32_t pow_clamped(uint32_t n, double e, uint32_t lo) {
    const double v = std::pow(double(std::max<uint32_t>(n, 2)), e);
    return std::max<uint32_t>(lo, static_cast<uint32_t>(std::lround(
                                      std::min(v, double(n) + 1.0))));
}

struct ResolvedParams {
    uint32_t hops, mu_cap;
};

ResolvedParams resolve(const DynGraph& g, const LongRangeParams& p,
                       complexity::ModeParams balanced) {
    ResolvedParams r;
    r.hops = p.hops != 0 ? p.hops : pow_clamped(g.n(), balanced.s, 2);
    r.mu_cap = p.mu_cap != 0 ? p.mu_cap : pow_clamped(g.n(), balanced.mu, 4);
    return r;
}

std::unique_ptr<BatchSource> make_short_source(const DynGraph& g,
                                               const LongRangeParams& p,
                                               uint32_t hops, uint32_t mu_cap,
                                               double short_eps,
                                               uint64_t seed) {
    if (p.real_weights || !g.integer_weights()) {
        RealShortHopParams rp;
        rp.hop_bound = hops;
        rp.eps = short_eps;
        rp.mu_cap = mu_cap;
        rp.nu_cap = mu_cap;
        rp.prime = p.prime;
        rp.seed = seed;
        return std::make_unique<RealShortHopOracle>(g, rp);
    }
    // Integer weights: an h-hop path costs at most W*h, so a value bound of
    // W*hops makes the oracle a (1+eps)-approximate hops-hop matrix.
    ShortHopParams sp;
    sp.bound = static_cast<uint64_t>(g.weight_cap()) * hops;
    sp.eps = short_eps;
    sp.mu_cap = mu_cap;
    sp.nu_cap = mu_cap;
    sp.prime = p.prime;
    sp.seed = seed;
    return std::make_unique<ShortHopOracle>(g, sp);
}
}  // namespace

// ---------------------------------------------------------------------------
// ApspOracle

ApspOracle::ApspOracle(const DynGraph& g, const LongRangeParams& params)
    : eps_(params.eps),
      confidence_(params.confidence),
      rng_(params.seed) {
    if (eps_ <= 0.0) throw ConfigError("approximation parameter must be positive");
    const ResolvedParams rp = resolve(g, params, complexity::balanced_apsp_query());
    hops_ = rp.hops;
    // Four approximate stages compose into the advertised factor: the
    // short-hop oracle, the hub closure, the T product, and the query
    // product.
    layer_eps_ = eps_ / 8.0;
    short_ = make_short_source(g, params, hops_, rp.mu_cap, layer_eps_,
                               rng_.fork());
    rebuild();
}

void ApspOracle::rebuild() {
    const uint32_t n = short_->n();
    hset_ = sample_hitting_set(n, double(hops_), confidence_, rng_).nodes;
    if (hset_.empty()) {
        t_ = DistMatrix(n, 0);
        dhv_ = DistMatrix(0, n);
        return;
    }
    const std::vector<uint32_t> all = all_nodes(n);
    const DistMatrix dvh = short_->batch(all, hset_);
    dhv_ = short_->batch(hset_, all);
    const DistMatrix dhh = dvh.submatrix(hset_, all_nodes(uint32_t(hset_.size())));
    const DistMatrix closure = minplus_power(dhh, layer_eps_);
    t_ = minplus_approx(dvh, closure, layer_eps_);
}

void ApspOracle::update(uint32_t u, uint32_t v, double w) {
    short_->update(u, v, w);
    rebuild();
}

DistMatrix ApspOracle::query(const BatchQuery& q) const {
    check_batch_query(q, short_->n());
    DistMatrix res = short_->batch(q.I, q.J);
    if (!hset_.empty()) {
        const DistMatrix ti = t_.submatrix(q.I, all_nodes(uint32_t(hset_.size())));
        const DistMatrix dj = dhv_.submatrix(all_nodes(uint32_t(hset_.size())), q.J);
        res = entrywise_min(res, minplus_approx(ti, dj, layer_eps_));
    }
    for (uint32_t i = 0; i < res.rows; ++i)
        for (uint32_t j = 0; j < res.cols; ++j)
            if (q.I[i] == q.J[j]) res.at(i, j) = 0.0;
    return res;
}

DistMatrix ApspOracle::explicit_update(uint32_t u, uint32_t v, double w) {
    update(u, v, w);
    const std::vector<uint32_t> all = all_nodes(short_->n());
    return query({all, all});
}

// ---------------------------------------------------------------------------
// SsspOracle

SsspOracle::SsspOracle(const DynGraph& g, const LongRangeParams& params)
    : eps_(params.eps), confidence_(params.confidence), rng_(params.seed) {
    if (eps_ <= 0.0) throw ConfigError("approximation parameter must be positive");
    const ResolvedParams rp = resolve(g, params, complexity::balanced_sssp());
    hops_ = rp.hops;
    // Dijkstra over the overlay adds segment estimates, so the short-hop
    // factor is the only approximation layer.
    short_ = make_short_source(g, params, hops_, rp.mu_cap, eps_, rng_.fork());
}

void SsspOracle::update(uint32_t u, uint32_t v, double w) {
    short_->update(u, v, w);
}

std::vector<double> SsspOracle::row(uint32_t source) {
    const uint32_t n = short_->n();
    if (source >= n) throw IndexOutOfRange("source out of range");

    std::vector<uint32_t> q =
        sample_hitting_set(n, double(hops_), confidence_, rng_).nodes;
    if (!std::binary_search(q.begin(), q.end(), source)) {
        q.push_back(source);
        std::sort(q.begin(), q.end());
    }
    const DistMatrix dqv = short_->batch(q, all_nodes(n));

    // Overlay graph: edges (x, y) for x in q, y in V, cost = estimate.
    // Dijkstra from the source; every overlay edge dominates the true
    // distance, so the result never undercuts it.
    std::vector<double> dist(n, kInf);
    dist[source] = 0.0;
    using Entry = std::pair<double, uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    pq.emplace(0.0, source);
    std::vector<size_t> qpos(n, SIZE_MAX);
    for (size_t i = 0; i < q.size(); ++i) qpos[q[i]] = i;
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[u]) continue;
        const size_t row = qpos[u];
        if (row == SIZE_MAX) continue;  // only hub nodes have out-edges
        for (uint32_t v = 0; v < n; ++v) {
            const double w = dqv.at(static_cast<uint32_t>(row), v);
            if (w == kInf) continue;
            const double nd = d + w;
            if (nd < dist[v]) {
                dist[v] = nd;
                pq.emplace(nd, v);
            }
        }
    }
    // Entry-wise min with the direct short-hop row.
    const size_t srow = qpos[source];
    for (uint32_t v = 0; v < n; ++v)
        dist[v] = std::min(dist[v], dqv.at(static_cast<uint32_t>(srow), v));
    dist[source] = 0.0;
    return dist;
}

std::vector<double> SsspOracle::update_and_row(uint32_t source, uint32_t u,
                                               uint32_t v, double w) {
    update(u, v, w);
    return row(source);
}

// ---------------------------------------------------------------------------
// UndirectedOracle

UndirectedOracle::UndirectedOracle(const DynGraph& g,
                                   const LongRangeParams& params)
    : eps_(params.eps), confidence_(params.confidence), rng_(params.seed) {
    if (g.directed()) throw DirectedInput("undirected oracle fed a digraph");
    if (!g.integer_weights())
        throw ConfigError("undirected oracle requires integer weights");
    if (eps_ <= 0.0) throw ConfigError("approximation parameter must be positive");

    const ResolvedParams rp = resolve(g, params, complexity::balanced_undirected());
    hops_ = rp.hops;
    weight_cap_ = g.weight_cap();
    // Three approximate stages: short hop, hub closure, hub additive slack.
    eps_stage_ = eps_ / 6.0;
    slack_ = 0.25 * weight_cap_ * double(hops_) * eps_stage_;

    ShortHopParams sp;
    sp.bound = static_cast<uint64_t>(weight_cap_) * hops_;
    sp.eps = eps_stage_;
    sp.mu_cap = rp.mu_cap;
    sp.nu_cap = rp.mu_cap;
    sp.prime = params.prime;
    sp.seed = rng_.fork();
    short_ = std::make_unique<ShortHopOracle>(g, sp);
    rebuild();
}

void UndirectedOracle::rebuild() {
    const uint32_t n = short_->n();
    // Hub windows are measured in hops; shrink them so that even the
    // (1+eps)-approximate queried value of an in-window hub clears the
    // assignment threshold.
    const double window = std::max(
        1.0, 0.25 * double(hops_) * eps_stage_ / (1.0 + eps_stage_));
    hset_ = sample_hitting_set(n, window, confidence_, rng_).nodes;
    assign_.assign(n, -1);
    if (hset_.empty()) {
        delta_ = DistMatrix(0, 0);
        return;
    }
    const DistMatrix dhv = short_->batch(hset_, all_nodes(n));
    for (uint32_t v = 0; v < n; ++v) {
        for (size_t x = 0; x < hset_.size(); ++x) {
            if (dhv.at(static_cast<uint32_t>(x), v) <= slack_) {
                assign_[v] = static_cast<int64_t>(x);
                break;
            }
        }
    }
    const DistMatrix dhh = dhv.submatrix(all_nodes(uint32_t(hset_.size())), hset_);
    delta_ = minplus_power(dhh, eps_stage_);
}

void UndirectedOracle::update(uint32_t u, uint32_t v, double w) {
    short_->update(u, v, w);
    rebuild();
}

DistMatrix UndirectedOracle::query(const BatchQuery& q) const {
    check_batch_query(q, short_->n());
    DistMatrix res = short_->batch(q.I, q.J);
    const double add = 2.0 * slack_;  // 0.5 * W * hops * eps_stage
    for (uint32_t i = 0; i < res.rows; ++i) {
        for (uint32_t j = 0; j < res.cols; ++j) {
            if (q.I[i] == q.J[j]) {
                res.at(i, j) = 0.0;
                continue;
            }
            const int64_t xu = assign_[q.I[i]];
            const int64_t xv = assign_[q.J[j]];
            if (xu < 0 || xv < 0) continue;
            const double via = delta_.at(static_cast<uint32_t>(xu),
                                         static_cast<uint32_t>(xv)) +
                               add;
            if (via < res.at(i, j)) res.at(i, j) = via;
        }
    }
    return res;
}

}  // namespace dyndist
