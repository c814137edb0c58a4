#include "dyndist/oracle.hpp"

#include <queue>

namespace dyndist::oracle {

namespace {
// Dijkstra with lexicographic (distance, hops) relaxation so `hops` is the
// minimum hop count among shortest paths.
void dijkstra_from(const std::vector<std::vector<std::pair<uint32_t, double>>>& adj,
                   uint32_t src, std::vector<double>& dist,
                   std::vector<uint32_t>& hops) {
    const uint32_t n = static_cast<uint32_t>(adj.size());
    dist.assign(n, kInf);
    hops.assign(n, 0);
    using Entry = std::tuple<double, uint32_t, uint32_t>;  // dist, hops, node
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    dist[src] = 0.0;
    pq.emplace(0.0, 0, src);
    while (!pq.empty()) {
        auto [d, h, u] = pq.top();
        pq.pop();
        if (d != dist[u] || h != hops[u]) continue;
        for (const auto& [v, w] : adj[u]) {
            const double nd = d + w;
            const uint32_t nh = h + 1;
            if (nd < dist[v] || (nd == dist[v] && nh < hops[v])) {
                dist[v] = nd;
                hops[v] = nh;
                pq.emplace(nd, nh, v);
            }
        }
    }
}
}  // namespace

ExactDistances bfs_apsp(const DynGraph& g) {
    const uint32_t n = g.n();
    const auto adj = g.adjacency();
    ExactDistances out;
    out.dist = DistMatrix(n, n, kInf);
    out.hops.assign(n, std::vector<uint32_t>(n, 0));
    std::vector<int64_t> level(n);
    for (uint32_t s = 0; s < n; ++s) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<uint32_t> q;
        q.push(s);
        level[s] = 0;
        while (!q.empty()) {
            const uint32_t u = q.front();
            q.pop();
            for (const auto& [v, w] : adj[u]) {
                (void)w;
                if (level[v] < 0) {
                    level[v] = level[u] + 1;
                    q.push(v);
                }
            }
        }
        for (uint32_t v = 0; v < n; ++v) {
            if (level[v] >= 0) {
                out.dist.at(s, v) = static_cast<double>(level[v]);
                out.hops[s][v] = static_cast<uint32_t>(level[v]);
            }
        }
    }
    return out;
}

ExactDistances dijkstra_apsp(const DynGraph& g) {
    const uint32_t n = g.n();
    const auto adj = g.adjacency();
    ExactDistances out;
    out.dist = DistMatrix(n, n, kInf);
    out.hops.assign(n, std::vector<uint32_t>(n, 0));
    std::vector<double> dist;
    std::vector<uint32_t> hops;
    for (uint32_t s = 0; s < n; ++s) {
        dijkstra_from(adj, s, dist, hops);
        for (uint32_t v = 0; v < n; ++v) {
            out.dist.at(s, v) = dist[v];
            out.hops[s][v] = hops[v];
        }
    }
    return out;
}

DistMatrix closure_apsp(const DynGraph& g) {
    const uint32_t n = g.n();
    DistMatrix d = DistMatrix::identity(n);
    for (const auto& e : g.edges())
        d.at(e.u, e.v) = std::min(d.at(e.u, e.v), e.w);
    for (uint32_t k = 0; k < n; ++k)
        for (uint32_t i = 0; i < n; ++i) {
            const double dik = d.at(i, k);
            if (dik == kInf) continue;
            for (uint32_t j = 0; j < n; ++j) {
                const double via = dik + d.at(k, j);
                if (via < d.at(i, j)) d.at(i, j) = via;
            }
        }
    return d;
}

PolyMatrix naive_poly_inverse(const PrimeField& f, const PolyMatrix& m) {
    if (m.rows != m.cols) throw BadForm("matrix is not square");
    if (m.h == 0 || m.slices[0] != FMatrix::identity(m.rows))
        throw BadForm("degree-0 slice is not the identity");
    // sum_k N^k with N = I - m, accumulated one power at a time.
    PolyMatrix nm(m.rows, m.rows, m.h);
    for (uint32_t k = 1; k < m.h; ++k)
        for (size_t i = 0; i < m.slices[k].data.size(); ++i)
            nm.slices[k].data[i] = f.neg(m.slices[k].data[i]);
    PolyMatrix acc = PolyMatrix::identity(m.rows, m.h);
    PolyMatrix power = PolyMatrix::identity(m.rows, m.h);
    for (uint32_t k = 1; k < m.h; ++k) {
        power = polymat_mul(f, power, nm);
        acc = polymat_add(f, acc, power);
    }
    return acc;
}

ExactMetrics exact_metrics(const DynGraph& g) {
    const uint32_t n = g.n();
    const ExactDistances ed = dijkstra_apsp(g);
    ExactMetrics m;
    m.eccentricities.assign(n, 0.0);
    m.closeness.assign(n, 0.0);
    m.diameter = 0.0;
    for (uint32_t u = 0; u < n; ++u) {
        double ecc = 0.0;
        for (uint32_t v = 0; v < n; ++v) ecc = std::max(ecc, ed.dist.at(u, v));
        m.eccentricities[u] = ecc;
        m.diameter = std::max(m.diameter, ecc);
    }
    m.radius = n == 0 ? 0.0 : kInf;
    for (double e : m.eccentricities) m.radius = std::min(m.radius, e);
    for (uint32_t s = 0; s < n; ++s) {
        double sum = 0.0;
        for (uint32_t v = 0; v < n; ++v) sum += ed.dist.at(v, s);
        m.closeness[s] = (n <= 1 || sum == 0.0 || sum == kInf)
                             ? 0.0
                             : double(n - 1) / sum;
    }
    if (n == 0) {
        m.diameter = 0.0;
        m.radius = 0.0;
    }
    return m;
}

}  // namespace dyndist::oracle
