#pragma once

#include "dyndist/dist_matrix.hpp"
#include "dyndist/hitting.hpp"

namespace dyndist {

// Exact (min,+) product, C[i,j] = min_k A[i,k] + B[k,j]. Oracle grade.
DistMatrix minplus_exact(const DistMatrix& a, const DistMatrix& b);

// (1+eps)-approximate (min,+) product by per-scale rounding: for each scale
// B_i = 2^i, entries bounded by B_i are rounded up to integers
// ceil(R*c/B_i) with R = ceil(4/eps), the bounded integer product is taken,
// descaled by B_i/R, and scales are combined by entry-wise min. Rounding up
// preserves never-underestimation; at the scale owning a pair's exact value
// the two rounding errors total at most eps times the value. Entries must be
// 0, in [1, W], or infinite.
DistMatrix minplus_approx(const DistMatrix& a, const DistMatrix& b, double eps);

// Approximate (min,+) transitive closure of a square matrix (the n-th
// min-plus power). Forces a zero diagonal, then squares ceil(log2 n) times
// with a per-level budget of eps/(2*levels).
DistMatrix minplus_power(const DistMatrix& d, double eps);

// Long-hop extension through a hitting set:
//   Dhat = D_{V,H} * closure(D_{H,H}) * D_{H,V}
// with approximate products. Callers take the entry-wise minimum of D and
// the result. An empty hitting set yields the all-infinity matrix.
DistMatrix extend_to_long_hops(const DistMatrix& d, const HittingSet& hs,
                               double eps);

DistMatrix entrywise_min(const DistMatrix& a, const DistMatrix& b);

}  // namespace dyndist
