#pragma once

#include <cstdint>
#include <vector>

#include "dyndist/dist_matrix.hpp"
#include "dyndist/graph.hpp"
#include "dyndist/polymatrix.hpp"

namespace dyndist::oracle {

// Brute-force references used by tests and by --oracle-check. Loop structure
// is deliberately different from the production code paths these check.

struct ExactDistances {
    DistMatrix dist;
    // Minimum hop count among shortest paths per pair (0 on the diagonal,
    // meaningless where dist is infinite).
    std::vector<std::vector<uint32_t>> hops;
};

ExactDistances bfs_apsp(const DynGraph& g);
ExactDistances dijkstra_apsp(const DynGraph& g);

// Matrix-closure reference (repeated relaxation, Floyd-Warshall order);
// cross-checks the per-source searches.
DistMatrix closure_apsp(const DynGraph& g);

// Ground truth for the dynamic inverse structures: the inverse recomputed
// from scratch by plain accumulation of matrix powers.
PolyMatrix naive_poly_inverse(const PrimeField& f, const PolyMatrix& m);

struct ExactMetrics {
    double diameter;
    double radius;
    std::vector<double> eccentricities;
    std::vector<double> closeness;
};

ExactMetrics exact_metrics(const DynGraph& g);

}  // namespace dyndist::oracle
