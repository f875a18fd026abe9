#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fairclust {

// Norm order for clustering objectives. p = 1, 2 are the usual finite
// orders; infinity is a distinct tag, never a large float.
struct PNorm {
    double p = 2.0;
    bool infinite = false;

    static PNorm finite(double p);
    static PNorm infinity() { return PNorm{0.0, true}; }

    bool operator==(const PNorm&) const = default;
};

// Points embedded in Euclidean space. Ids are the positions 0..n-1 and
// never change after construction.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<std::vector<double>> points);

    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return points_.empty() ? 0 : points_[0].size(); }
    const std::vector<double>& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<std::vector<double>>& points() const { return points_; }

private:
    std::vector<std::vector<double>> points_;
};

// Dense symmetric metric. Explicit matrices are triangle-checked at
// construction; Euclidean ones are exempt (the metric holds by construction).
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    static DistanceMatrix from_points(const PointSet& ps);
    // Checks symmetry, zero diagonal, nonnegativity and every (i,j,k)
    // triangle within tol.
    static DistanceMatrix from_explicit(std::vector<std::vector<double>> d,
                                        double tol = 1e-9);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    double max_distance() const;
    // Sorted ascending, deduplicated, including 0.
    std::vector<double> distinct_distances() const;

private:
    std::size_t n_ = 0;
    std::vector<double> d_;  // row-major n*n
};

PNorm parse_pnorm(const std::string& s);

struct HardClustering {
    std::vector<int> centers;       // point ids, |centers| <= k
    std::vector<int> assign;        // point id -> center id
};

// One probability distribution over `centers` per point. Row j of mu is
// the point's distribution; mu is n x |centers|, row-major.
struct SoftClustering {
    std::vector<int> centers;
    std::vector<std::vector<double>> mu;

    std::size_t num_points() const { return mu.size(); }
    std::size_t num_centers() const { return centers.size(); }
};

// Validates rows sum to 1 within row_tol and entries lie in [0, 1].
void validate_soft(const SoftClustering& sc, double row_tol = 1e-8);

// Renormalizes rows whose sum drifts by at most max_drift (LP solutions are
// feasible within tolerance); larger drift throws.
void renormalize_rows(SoftClustering& sc, double max_drift = 1e-6);

// Point-mass soft clustering matching a hard one.
SoftClustering to_soft(const HardClustering& hc, std::size_t n);

struct Group {
    std::string name;
    std::vector<int> members;  // point ids, sorted, unique
};

// Protected groups with per-group fraction bounds beta_r <= alpha_r.
struct GroupSpec {
    std::vector<Group> groups;
    std::vector<double> alpha;
    std::vector<double> beta;

    // beta_r = p_r*(1-delta), alpha_r = min(1, p_r/(1-delta)) with
    // p_r = |G_r|/n.
    static GroupSpec from_delta(std::vector<Group> groups, double delta,
                                std::size_t n);
    static GroupSpec from_bounds(std::vector<Group> groups,
                                 std::vector<double> alpha,
                                 std::vector<double> beta);

    std::size_t num_groups() const { return groups.size(); }
};

enum class FairnessScope { AllPairs, WithinGroups };

// Sparse symmetric pairwise bounds F(j1,j2) on divergence. Pairs are stored
// once with j1 < j2; absent pairs are unconstrained.
class FairnessConstraintSet {
public:
    FairnessConstraintSet() = default;
    explicit FairnessConstraintSet(FairnessScope scope) : scope_(scope) {}

    // Inserts both orientations; keeps the smaller bound if already present.
    void add(int j1, int j2, double bound);
    const std::map<std::pair<int, int>, double>& bounds() const { return bounds_; }
    std::size_t num_pairs() const { return bounds_.size(); }
    FairnessScope scope() const { return scope_; }

private:
    FairnessScope scope_ = FairnessScope::AllPairs;
    std::map<std::pair<int, int>, double> bounds_;
};

// F = d, the lemma-relation special case (unscaled metric, all pairs).
FairnessConstraintSet fairness_from_metric(const DistanceMatrix& dm);

double soft_cost(const SoftClustering& sc, const DistanceMatrix& dm, PNorm p);
double hard_cost(const HardClustering& hc, const DistanceMatrix& dm, PNorm p);

}  // namespace fairclust
