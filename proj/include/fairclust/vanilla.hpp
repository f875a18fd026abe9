#pragma once

#include <cstdint>

#include "fairclust/core.hpp"

namespace fairclust {

struct LloydResult {
    HardClustering clustering;   // centers snapped to data point ids
    std::vector<double> sse;     // sum of squared distances after each sweep
    std::size_t iterations = 0;
};

// Lloyd's method with k-means++ seeding. Empty clusters are reseeded to the
// point farthest from its current centroid, which keeps the recorded SSE
// sequence non-increasing. Final centroids snap to the nearest data point
// (ties toward the lower id) and the assignment is recomputed against the
// resulting distinct center ids.
LloydResult lloyd_kmeans(const PointSet& ps, std::size_t k, std::uint64_t seed,
                         std::size_t max_iters = 100);

// Greedy seeding followed by steepest-descent single swaps on the summed
// d^power objective; stops when no swap improves the cost.
HardClustering local_search_kmedian(const DistanceMatrix& dm, std::size_t k,
                                    double power = 1.0);

// Farthest-first traversal from point 0, ties toward the lower id.
HardClustering gonzalez_kcenter(const DistanceMatrix& dm, std::size_t k);

}  // namespace fairclust
