#pragma once

#include <cstdint>

#include "fairclust/core.hpp"
#include "fairclust/divergence.hpp"
#include "fairclust/lp.hpp"

namespace fairclust {

// Assignment program over a fixed center set: minimize the p-th power
// transport cost subject to one unit of mass per point and a total-variation
// cap per constrained pair. Pairs whose bound is >= 1 are dropped (TV never
// exceeds 1). Group sandwich rows are added when a GroupSpec is attached;
// groups may overlap, and TV rows are then kept only for pairs sharing a
// group.
struct AssignProgram {
    lp::LinearProgram prog;
    std::size_t k = 0;
    std::size_t n = 0;

    // x variables are laid out c-major: x(c, j) = c * n + j; auxiliary
    // variables follow.
    SoftClustering decode(const std::vector<double>& x,
                          const std::vector<int>& centers) const;
};

AssignProgram build_fair_assign(
    const DistanceMatrix& dm, const std::vector<int>& centers,
    const FairnessConstraintSet& fairness, PNorm p,
    DivergenceKind div = DivergenceKind::TotalVariation);

AssignProgram build_combined(
    const DistanceMatrix& dm, const std::vector<int>& centers,
    const FairnessConstraintSet& fairness, const GroupSpec& gs, PNorm p,
    DivergenceKind div = DivergenceKind::TotalVariation);

SoftClustering solve_fair_assign(const DistanceMatrix& dm,
                                 const std::vector<int>& centers,
                                 const FairnessConstraintSet& fairness, PNorm p);

SoftClustering solve_combined(const DistanceMatrix& dm,
                              const std::vector<int>& centers,
                              const FairnessConstraintSet& fairness,
                              const GroupSpec& gs, PNorm p);

// Two-stage pipeline: a vanilla clustering picks the centers, then the
// assignment program redistributes mass fairly over them. For p = 2 with
// coordinates available the first stage is Lloyd's method; otherwise it is
// local-search on the p-th power of the metric. The output is audited
// against the fairness set before returning.
struct AlgResult {
    HardClustering stage1;
    SoftClustering soft;
    double stage1_cost = 0.0;
    double fair_cost = 0.0;
};

AlgResult alg_if(const DistanceMatrix& dm, const PointSet* ps, std::size_t k,
                 PNorm p, const FairnessConstraintSet& fairness,
                 std::uint64_t seed);

// Precondition: group_spec_feasible(gs, n); the sandwich constraints admit
// a solution exactly under that arithmetic condition.
AlgResult alg_cf(const DistanceMatrix& dm, const PointSet* ps, std::size_t k,
                 PNorm p, const FairnessConstraintSet& fairness,
                 const GroupSpec& gs, std::uint64_t seed);

// Relaxation where every point may host fractional center mass: minimize
// sum x_ij d(i,j)^p with sum_i x_ij = 1, x_ij <= y_i <= 1, sum_i y_i <= k,
// the pairwise total-variation rows, and optionally the group sandwich rows.
// Returns the p-th root; lower-bounds the cost of every (combined) fair
// solution with at most k centers. Guarded to n <= 100: the program has
// n^2 + n variables.
double lower_bound(const DistanceMatrix& dm, std::size_t k,
                   const FairnessConstraintSet& fairness, PNorm p,
                   const GroupSpec* gs = nullptr);

// mu_j uniform over the centers: fair for every bound (all TV gaps are 0).
SoftClustering uniform_solution(std::size_t n, std::vector<int> centers);

// Nearest center to point i, ties toward the lower id.
int phi_nearest(std::size_t i, const std::vector<int>& centers,
                const DistanceMatrix& dm);

// Re-expresses a solution over a new center set: each old center's mass is
// routed to its nearest new center (ties toward the lower id). New centers
// with an empty preimage simply carry zero mass. Total variation between any
// two rows never increases.
SoftClustering phi_map_solution(const SoftClustering& sc,
                                const std::vector<int>& new_centers,
                                const DistanceMatrix& dm);

// Arithmetic feasibility test for the group sandwich: beta_r * n <= |G_r|
// <= alpha_r * n for every group. Matches LP feasibility exactly.
bool group_spec_feasible(const GroupSpec& gs, std::size_t n);

// Largest distance from a point to a center in its support.
double support_radius(const SoftClustering& sc, const DistanceMatrix& dm,
                      double mass_tol = 1e-9);

// Radius-guessing pipeline for p = infinity: Gonzalez picks the centers,
// then guesses R ascend over {0} and the distinct pairwise distances; for
// each guess a feasibility program restricted to balls of radius 4R is
// solved, and the first feasible guess wins. `radius` is the guaranteed
// scale 4 * guess; every supported center lies within it.
struct KCenterResult {
    SoftClustering soft;
    double guess = 0.0;
    double radius = 0.0;
    std::size_t guesses_tried = 0;
};

KCenterResult fair_kcenter(const DistanceMatrix& dm, std::size_t k,
                           const FairnessConstraintSet& fairness,
                           const GroupSpec* gs = nullptr);

// Feasibility probe for one guess; exposed so the monotone-in-R property can
// be exercised directly. Fills `out` on success.
bool kcenter_guess_feasible(const DistanceMatrix& dm,
                            const std::vector<int>& centers,
                            const FairnessConstraintSet& fairness, double guess,
                            const GroupSpec* gs, SoftClustering* out);

}  // namespace fairclust
