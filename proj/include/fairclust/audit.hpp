#pragma once

#include <cstdint>

#include "fairclust/core.hpp"

namespace fairclust {

// Metric-scaled bounds d / max_d, kept only between each point and its m
// nearest neighbors (union over both directions).
FairnessConstraintSet fairness_f1(const DistanceMatrix& dm, std::size_t m);

// Local bounds: r_i is the radius of the smallest ball around i holding at
// least floor(n/k) points (the point itself counts). The directed bound is
// d(i,j)/r_i inside the ball and 1 outside (also 1 whenever r_i = 0); a pair
// keeps the smaller of its two directed bounds and is emitted only when that
// is below 1.
FairnessConstraintSet fairness_f2(const DistanceMatrix& dm, std::size_t k);

// Soft assignment around fixed centers with stiffness beta:
// mu_j(c) proportional to exp(-beta * d(j,c)^2). beta = 0 gives the uniform
// distribution; large beta approaches the nearest-center assignment.
SoftClustering soften(const DistanceMatrix& dm, const std::vector<int>& centers,
                      double beta);

// Lloyd's method picks the centers, then soften() spreads the assignment.
SoftClustering soft_kmeans(const PointSet& ps, std::size_t k, double beta,
                           std::uint64_t seed);

// Finds the stiffness at which the softened cost matches target_cost by
// bisection on [0, 1e8] (200 steps). The cost is non-increasing in beta; an
// eight-point logarithmic pre-sweep asserts that before the search. Returns
// an endpoint when the target lies outside the attainable range.
double calibrate_beta(const DistanceMatrix& dm, const std::vector<int>& centers,
                      PNorm p, double target_cost);

struct ViolationReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double max_excess = 0.0;  // largest TV - bound over violating pairs

    double fraction() const {
        return checked == 0 ? 0.0
                            : static_cast<double>(violations) /
                                  static_cast<double>(checked);
    }
};

ViolationReport count_violations(const SoftClustering& sc,
                                 const FairnessConstraintSet& fairness,
                                 double tol = 1e-6);

// Largest additive deviation of a group's expected per-center mass from its
// population share: max_i |sum_{j in G} mu_j(i) - p_r sum_{j in V} mu_j(i)|.
double mad(const SoftClustering& sc, const std::vector<int>& members);

// Earth-mover distance between the uniform distribution on the members and
// the uniform distribution on all points, under the metric.
double emd_to_population(const DistanceMatrix& dm,
                         const std::vector<int>& members);

// For solutions fair with respect to bounds F = d, each group's deviation is
// capped by |G_r| times its earth-mover distance to the population.
struct BiasCheck {
    std::string group;
    double mad = 0.0;
    double bound = 0.0;  // |G_r| * emd
    double gap = 0.0;    // bound - mad
    bool holds = false;
};

std::vector<BiasCheck> check_bias_bound(const SoftClustering& sc,
                                        const DistanceMatrix& dm,
                                        const std::vector<Group>& groups,
                                        double tol = 1e-6);

// Two colinear five-point clusters of diameter r whose gap is R; the cluster
// midpoints are ids 2 and 7. Tying those two together with a tiny bound
// forces any fair solution to straddle the gap, so the fair-to-vanilla cost
// ratio grows with R/r.
PointSet make_price_instance(double r, double R);
FairnessConstraintSet price_fairness(double eps);

}  // namespace fairclust
