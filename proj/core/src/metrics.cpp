#include "dyndist/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "dyndist/complexity.hpp"
#include "dyndist/errors.hpp"
#include "dyndist/hitting.hpp"
#include "dyndist/minplus.hpp"

namespace dyndist {

// ---------------------------------------------------------------------------
// MetricSnapshot

MetricSnapshot::MetricSnapshot(uint32_t n, double value_bound, QueryFn query)
    : n_(n), bound_(value_bound), query_(std::move(query)) {}

MetricSnapshot MetricSnapshot::of(const BatchSource& src) {
    return MetricSnapshot(src.n(), src.value_bound(),
                          [&src](const std::vector<uint32_t>& I,
                                 const std::vector<uint32_t>& J) {
                              return src.batch(I, J);
                          });
}

MetricSnapshot MetricSnapshot::of(const ApspOracle& o) {
    return MetricSnapshot(o.n(), kInf,
                          [&o](const std::vector<uint32_t>& I,
                               const std::vector<uint32_t>& J) {
                              return o.query({I, J});
                          });
}

MetricSnapshot MetricSnapshot::of(const UndirectedOracle& o) {
    return MetricSnapshot(o.n(), kInf,
                          [&o](const std::vector<uint32_t>& I,
                               const std::vector<uint32_t>& J) {
                              return o.query({I, J});
                          });
}

void MetricSnapshot::prefetch_rows(const std::vector<uint32_t>& us) {
    std::vector<uint32_t> missing;
    for (uint32_t u : us)
        if (!rows_.count(u)) missing.push_back(u);
    if (missing.empty()) return;
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    const DistMatrix block = query_(missing, all_nodes(n_));
    for (uint32_t i = 0; i < block.rows; ++i) {
        std::vector<double> row(n_);
        for (uint32_t j = 0; j < n_; ++j) {
            row[j] = block.at(i, j);
            if (row[j] == kInf && bound_ != kInf) overflow_ = true;
        }
        rows_[missing[i]] = std::move(row);
    }
}

void MetricSnapshot::prefetch_cols(const std::vector<uint32_t>& us) {
    std::vector<uint32_t> missing;
    for (uint32_t u : us)
        if (!cols_.count(u)) missing.push_back(u);
    if (missing.empty()) return;
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    const DistMatrix block = query_(all_nodes(n_), missing);
    for (uint32_t j = 0; j < block.cols; ++j) {
        std::vector<double> col(n_);
        for (uint32_t i = 0; i < n_; ++i) {
            col[i] = block.at(i, j);
            if (col[i] == kInf && bound_ != kInf) overflow_ = true;
        }
        cols_[missing[j]] = std::move(col);
    }
}

const std::vector<double>& MetricSnapshot::row_from(uint32_t u) {
    if (!rows_.count(u)) prefetch_rows({u});
    return rows_.at(u);
}

const std::vector<double>& MetricSnapshot::col_to(uint32_t u) {
    if (!cols_.count(u)) prefetch_cols({u});
    return cols_.at(u);
}

// ---------------------------------------------------------------------------
// Anchor skeleton shared by the F.1-style algorithms.

namespace {
struct Anchors {
    std::vector<uint32_t> sample;   // S
    uint32_t w = 0;                 // farthest node from S
    std::vector<uint32_t> nearest;  // its ceil(sqrt n) nearest nodes
    std::vector<uint32_t> all;      // S u nearest u {w}, sorted unique
};

Anchors pick_anchors(MetricSnapshot& snap, SplitMix64& rng, bool directed) {
    const uint32_t n = snap.n();
    Anchors a;
    const auto k = static_cast<uint32_t>(
        std::ceil(3.0 * std::sqrt(double(n)) * std::log(double(std::max(n, 2u)))));
    a.sample = sample_nodes(n, std::min(n, k), rng);

    snap.prefetch_rows(a.sample);
    if (directed) snap.prefetch_cols(a.sample);

    // Farthest node from the sample: maximize min_s d(u, s). In the
    // undirected case d(u,s) is read from the sampled rows.
    std::vector<double> to_sample(n, kInf);
    for (uint32_t s : a.sample) {
        const std::vector<double>& d =
            directed ? snap.col_to(s) : snap.row_from(s);
        for (uint32_t u = 0; u < n; ++u)
            to_sample[u] = std::min(to_sample[u], d[u]);
    }
    a.w = 0;
    for (uint32_t u = 1; u < n; ++u)
        if (to_sample[u] > to_sample[a.w]) a.w = u;

    // The ceil(sqrt n) approximately-closest nodes to w; ties break toward
    // the smaller node index.
    const std::vector<double>& from_w = snap.row_from(a.w);
    std::vector<uint32_t> order(n);
    for (uint32_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) {
        if (from_w[x] != from_w[y]) return from_w[x] < from_w[y];
        return x < y;
    });
    const auto take = std::min<uint32_t>(
        n, static_cast<uint32_t>(std::ceil(std::sqrt(double(n)))));
    a.nearest.assign(order.begin(), order.begin() + take);
    std::sort(a.nearest.begin(), a.nearest.end());

    a.all = a.sample;
    a.all.insert(a.all.end(), a.nearest.begin(), a.nearest.end());
    a.all.push_back(a.w);
    std::sort(a.all.begin(), a.all.end());
    a.all.erase(std::unique(a.all.begin(), a.all.end()), a.all.end());

    snap.prefetch_rows(a.all);
    if (directed) snap.prefetch_cols(a.all);
    return a;
}

// Diameter of the sampled hub graph plus additive slack; shared by the
// diameter and radius large-value paths. `minimize` flips max_s to min_s.
double sampled_metric(MetricSnapshot& snap, const DynGraph& g,
                      const MetricConfig& cfg, bool minimize) {
    const uint32_t n = snap.n();
    const double d = double(std::max<uint32_t>(cfg.fallback_hops, 1));
    const double wd = cfg.weight_cap * d;
    const double stage = cfg.eps / 6.0;
    SplitMix64 rng(cfg.seed + 0x9e37);

    const auto want = static_cast<uint64_t>(
        std::ceil(cfg.confidence * 2.0 * double(n) / (d * cfg.eps * cfg.eps) *
                  std::log(double(std::max(n, 2u)))));
    const std::vector<uint32_t> hubs =
        sample_nodes(n, static_cast<uint32_t>(std::min<uint64_t>(n, want)), rng);
    if (hubs.empty()) return 0.0;

    (void)g;
    DistMatrix gh(uint32_t(hubs.size()), uint32_t(hubs.size()), kInf);
    snap.prefetch_rows(hubs);
    for (uint32_t i = 0; i < gh.rows; ++i) {
        const std::vector<double>& row = snap.row_from(hubs[i]);
        for (uint32_t j = 0; j < gh.cols; ++j) {
            const double v = row[hubs[j]];
            if (v <= wd) gh.at(i, j) = v;
        }
    }
    for (uint32_t i = 0; i < gh.rows; ++i) gh.at(i, i) = 0.0;
    const DistMatrix closure = minplus_power(gh, stage);

    if (minimize) {
        double best = kInf;
        for (uint32_t i = 0; i < closure.rows; ++i) {
            double depth = 0.0;
            for (uint32_t j = 0; j < closure.cols; ++j)
                depth = std::max(depth, closure.at(i, j));
            best = std::min(best, depth);
        }
        return best + 0.5 * wd * stage;
    }
    double best = 0.0;
    for (double v : closure.data) best = std::max(best, v);
    return best + wd * stage;
}
}  // namespace

DiameterEstimate diameter_1eps(MetricSnapshot& snap, const DynGraph& g,
                               const MetricConfig& cfg) {
    if (!is_strongly_connected(g))
        return {kInf, DiameterEstimate::Mode::Disconnected};
    return {sampled_metric(snap, g, cfg, /*minimize=*/false),
            DiameterEstimate::Mode::Sampled};
}

double radius_1eps(MetricSnapshot& snap, const DynGraph& g,
                   const MetricConfig& cfg) {
    if (g.directed()) throw DirectedInput("radius needs an undirected graph");
    if (!is_strongly_connected(g)) return kInf;
    return sampled_metric(snap, g, cfg, /*minimize=*/true);
}

DiameterEstimate diameter_15(MetricSnapshot& snap, const DynGraph& g,
                             const MetricConfig& cfg) {
    if (!is_strongly_connected(g))
        return {kInf, DiameterEstimate::Mode::Disconnected};
    const uint32_t n = snap.n();
    if (n <= 1) return {0.0, DiameterEstimate::Mode::Small};

    SplitMix64 rng(cfg.seed);
    const Anchors a = pick_anchors(snap, rng, g.directed());
    if (snap.overflowed()) {
        // Some anchor distance exceeded the tracked range, so the diameter
        // is large; switch to the hitting-set estimate.
        return diameter_1eps(snap, g, cfg);
    }
    double best = 0.0;
    for (uint32_t u : a.all) {
        const std::vector<double>& row = snap.row_from(u);
        for (double v : row) best = std::max(best, v);
        const std::vector<double>& col =
            g.directed() ? snap.col_to(u) : snap.row_from(u);
        for (double v : col) best = std::max(best, v);
    }
    if (snap.overflowed()) return diameter_1eps(snap, g, cfg);
    return {best, DiameterEstimate::Mode::Small};
}

double radius_15(MetricSnapshot& snap, const DynGraph& g,
                 const MetricConfig& cfg) {
    if (g.directed()) throw DirectedInput("radius needs an undirected graph");
    if (!is_strongly_connected(g)) return kInf;
    const uint32_t n = snap.n();
    if (n <= 1) return 0.0;

    SplitMix64 rng(cfg.seed);
    const Anchors a = pick_anchors(snap, rng, /*directed=*/false);
    if (snap.overflowed()) return radius_1eps(snap, g, cfg);

    double best = kInf;
    for (uint32_t u : a.all) {
        const std::vector<double>& row = snap.row_from(u);
        double depth = 0.0;
        for (double v : row) depth = std::max(depth, v);
        best = std::min(best, depth);
    }
    if (snap.overflowed()) return radius_1eps(snap, g, cfg);
    return best;
}

std::vector<double> eccentricities_35(MetricSnapshot& snap, const DynGraph& g,
                                      const MetricConfig& cfg) {
    if (g.directed()) throw DirectedInput("eccentricities need an undirected graph");
    const uint32_t n = snap.n();
    if (!is_strongly_connected(g)) return std::vector<double>(n, kInf);
    if (n <= 1) return std::vector<double>(n, 0.0);

    SplitMix64 rng(cfg.seed);
    const Anchors a = pick_anchors(snap, rng, /*directed=*/false);

    std::vector<double> ecc(n, 0.0);
    std::vector<char> is_anchor(n, 0);
    for (uint32_t s : a.all) {
        const std::vector<double>& row = snap.row_from(s);
        double depth = 0.0;
        for (double v : row) depth = std::max(depth, v);
        ecc[s] = depth;
        is_anchor[s] = 1;
    }
    for (uint32_t v = 0; v < n; ++v) {
        if (is_anchor[v]) continue;
        double best = 0.0;
        for (uint32_t s : a.all) {
            const double dsv = snap.row_from(s)[v];
            best = std::max(best, std::max(dsv, ecc[s] - dsv));
        }
        ecc[v] = best;
    }
    return ecc;
}

std::vector<double> closeness_all(MetricSnapshot& snap, const DynGraph& g,
                                  const MetricConfig& cfg) {
    const uint32_t n = snap.n();
    if (!is_strongly_connected(g)) return std::vector<double>(n, 0.0);
    if (n <= 1) return std::vector<double>(n, 0.0);

    SplitMix64 rng(cfg.seed);
    const auto want = static_cast<uint64_t>(std::ceil(
        4.0 * std::pow(double(n), 2.0 / 3.0) / (cfg.eps * cfg.eps) *
        std::log(double(n))));
    const uint32_t k = static_cast<uint32_t>(std::min<uint64_t>(n, want));
    const std::vector<uint32_t> sources = sample_nodes(n, k, rng);
    snap.prefetch_rows(sources);

    std::vector<double> sums(n, 0.0);
    for (uint32_t s : sources) {
        const std::vector<double>& row = snap.row_from(s);
        for (uint32_t v = 0; v < n; ++v) sums[v] += row[v];
    }
    std::vector<double> out(n, 0.0);
    for (uint32_t v = 0; v < n; ++v) {
        // Estimate of 1/c(v) = sum_u dist(u, v) / (n - 1).
        const double est = sums[v] * double(n) / (double(k) * double(n - 1));
        out[v] = est > 0.0 && est != kInf ? 1.0 / est : 0.0;
    }
    return out;
}

// ---------------------------------------------------------------------------
// ExactDiameterEngine

ExactDiameterEngine::ExactDiameterEngine(const DynGraph& g,
                                         const ExactDiameterParams& params)
    : graph_(g),
      confidence_(params.confidence),
      field_(params.prime),
      rng_(params.seed) {
    if (!g.integer_weights())
        throw ConfigError("exact diameter requires integer weights");
    if (g.n() > (1u << 13))
        throw ConfigError("exact diameter pair bookkeeping caps n at 2^13");
    const auto balanced = complexity::balanced_exact_diameter();
    hops_ = params.hops != 0
                ? params.hops
                : std::max<uint32_t>(
                      1, static_cast<uint32_t>(std::lround(std::pow(
                             double(std::max(g.n(), 2u)), balanced.s))));
    bound_ = static_cast<uint64_t>(g.weight_cap()) * hops_;
    const uint32_t h = static_cast<uint32_t>(bound_ + 1);

    const double budget = double(h) * double(g.n()) * double(g.n());
    if (double(field_.p()) < budget * 1048576.0)
        throw ConfigError("field modulus too small for this instance");

    const uint32_t mu =
        params.mu_cap != 0
            ? params.mu_cap
            : std::max<uint32_t>(4, static_cast<uint32_t>(std::lround(std::pow(
                                        double(std::max(g.n(), 2u)),
                                        balanced.mu))));
    enc_ = std::make_unique<GraphEncoding>(g, h, field_, rng_.fork());
    SliceInverse::Params sp;
    sp.degrees.resize(bound_);
    for (uint64_t d = 1; d <= bound_; ++d)
        sp.degrees[d - 1] = static_cast<uint32_t>(d);
    sp.mu_cap = mu;
    sp.nu_cap = mu;
    ds_ = std::make_unique<TwoCopyWrapper>(field_, enc_->matrix(), sp);
}

void ExactDiameterEngine::update(uint32_t u, uint32_t v, double w) {
    if (w != kInf && w != std::floor(w))
        throw ConfigError("exact diameter requires integer weights");
    const double old_w = graph_.weight(u, v);
    graph_.set_weight(u, v, w);
    ElementUpdate eu = enc_->edge_update(u, v, old_w, w);
    ds_->update(eu.i, eu.j, eu.delta);
    if (!graph_.directed()) {
        ElementUpdate eu2 = enc_->edge_update(v, u, old_w, w);
        ds_->update(eu2.i, eu2.j, eu2.delta);
    }
}

bool ExactDiameterEngine::slice_all_reachable(uint32_t d,
                                              std::vector<uint64_t>* misses) {
    const uint32_t n = graph_.n();
    const std::vector<uint32_t> all = all_nodes(n);
    const FMatrix slice = ds_->query(all, all, d);
    bool ok = true;
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            if (i == j || slice.at(i, j) != 0) continue;
            ok = false;
            if (misses) {
                const uint64_t bit = uint64_t(i) * n + j;
                (*misses)[bit >> 6] |= uint64_t(1) << (bit & 63);
            } else {
                return false;
            }
        }
    return ok;
}

double ExactDiameterEngine::diameter() {
    const uint32_t n = graph_.n();
    if (n <= 1) return 0.0;

    std::vector<uint64_t> misses((uint64_t(n) * n + 63) / 64, 0);
    if (slice_all_reachable(static_cast<uint32_t>(bound_), &misses)) {
        // Everything is within the tracked range; binary search the largest
        // pairwise distance over the slice index.
        uint32_t lo = 1, hi = static_cast<uint32_t>(bound_);
        while (lo < hi) {
            const uint32_t mid = lo + (hi - lo) / 2;
            if (slice_all_reachable(mid, nullptr))
                hi = mid;
            else
                lo = mid + 1;
        }
        return double(lo);
    }

    if (!is_strongly_connected(graph_)) return kInf;

    // Every unresolved pair needs at least hops_ hops, so a hitting set of
    // window hops_ covers them; answer those pairs exactly through Dijkstra
    // trees rooted at the sampled nodes.
    const std::vector<uint32_t> hubs =
        sample_hitting_set(n, double(hops_), confidence_, rng_).nodes;
    const auto adj = graph_.adjacency();
    const auto radj = graph_.reverse_adjacency();
    auto dijkstra = [n](const std::vector<std::vector<std::pair<uint32_t, double>>>& a,
                        uint32_t src) {
        std::vector<double> dist(n, kInf);
        using Entry = std::pair<double, uint32_t>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
        dist[src] = 0.0;
        pq.emplace(0.0, src);
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d != dist[u]) continue;
            for (const auto& [v, w] : a[u]) {
                if (d + w < dist[v]) {
                    dist[v] = d + w;
                    pq.emplace(d + w, v);
                }
            }
        }
        return dist;
    };
    std::vector<std::vector<double>> from_hub, to_hub;
    from_hub.reserve(hubs.size());
    to_hub.reserve(hubs.size());
    for (uint32_t x : hubs) {
        from_hub.push_back(dijkstra(adj, x));
        to_hub.push_back(dijkstra(radj, x));
    }

    double best = 0.0;
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            const uint64_t bit = uint64_t(i) * n + j;
            if (!((misses[bit >> 6] >> (bit & 63)) & 1)) continue;
            double d = kInf;
            for (size_t x = 0; x < hubs.size(); ++x)
                d = std::min(d, to_hub[x][i] + from_hub[x][j]);
            best = std::max(best, d);
        }
    return best;
}

}  // namespace dyndist
