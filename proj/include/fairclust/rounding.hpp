#pragma once

#include <iosfwd>

#include "fairclust/core.hpp"

namespace fairclust {

// Assigns each point to the nearest center carrying positive mass. The
// per-point distance never exceeds the expected distance under mu_j, so any
// expected-cost guarantee survives the rounding.
HardClustering round_support_nearest(const SoftClustering& sc,
                                     const DistanceMatrix& dm,
                                     double mass_tol = 1e-9);

struct Graph {
    std::size_t n = 0;
    std::vector<std::pair<int, int>> edges;
};

// First line: vertex count. Each following line: one edge "u v", 0-based.
Graph parse_graph(std::istream& is);

// Two-valued metric: 1 across an edge, 2 otherwise.
DistanceMatrix domset_to_metric(const Graph& g);

// Exhaustive dominating-set decision, n <= 20.
bool domset_bruteforce(const Graph& g, std::size_t k);

// Smallest achievable maximum expected distance over all center sets of size
// at most k, subject to the pairwise total-variation bounds. Exhaustive over
// center sets, n <= 10.
double min_max_expected_distance(const DistanceMatrix& dm, std::size_t k,
                                 const FairnessConstraintSet& fairness);

// Checks that the graph has a dominating set of size <= k exactly when the
// two-valued-metric instance (fairness bound d/2 under total variation)
// admits a solution with maximum expected distance below 2.
struct ReductionReport {
    bool domset = false;
    double fair_opt = 0.0;
    bool agrees = false;
};

ReductionReport reduction_report(const Graph& g, std::size_t k);
bool verify_reduction(const Graph& g, std::size_t k);

}  // namespace fairclust
