#include "fairclust/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fairclust/kernels.hpp"

namespace fairclust {

PNorm PNorm::finite(double p) {
    if (p < 1.0) throw std::invalid_argument("norm order must satisfy p >= 1");
    return PNorm{p, false};
}

PNorm parse_pnorm(const std::string& s) {
    if (s == "inf" || s == "infinity") return PNorm::infinity();
    std::size_t used = 0;
    double p = 0.0;
    try {
        p = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse norm order: " + s);
    }
    if (used != s.size())
        throw std::invalid_argument("cannot parse norm order: " + s);
    return PNorm::finite(p);
}

PointSet::PointSet(std::vector<std::vector<double>> points)
    : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("point set is empty");
    const std::size_t d = points_[0].size();
    if (d == 0) throw std::invalid_argument("points must have dimension >= 1");
    for (const auto& p : points_) {
        if (p.size() != d)
            throw std::invalid_argument("points have mismatched dimensions");
    }
}

DistanceMatrix DistanceMatrix::from_points(const PointSet& ps) {
    DistanceMatrix dm;
    dm.n_ = ps.size();
    dm.d_ = kernels::pairwise_distances(ps.points());
    return dm;
}

DistanceMatrix DistanceMatrix::from_explicit(std::vector<std::vector<double>> d,
                                             double tol) {
    const std::size_t n = d.size();
    if (n == 0) throw std::invalid_argument("empty distance matrix");
    DistanceMatrix dm;
    dm.n_ = n;
    dm.d_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i].size() != n)
            throw std::invalid_argument("distance matrix is not square");
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i][j] < 0.0) throw std::invalid_argument("negative distance");
            if (std::abs(d[i][j] - d[j][i]) > tol)
                throw std::invalid_argument("distance matrix is not symmetric");
            dm.d_[i * n + j] = d[i][j];
        }
        if (d[i][i] != 0.0)
            throw std::invalid_argument("distance matrix diagonal must be zero");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (dm.d_[i * n + k] > dm.d_[i * n + j] + dm.d_[j * n + k] + tol)
                    throw std::invalid_argument("triangle inequality violated");
    return dm;
}

double DistanceMatrix::max_distance() const {
    double m = 0.0;
    for (double v : d_) m = std::max(m, v);
    return m;
}

std::vector<double> DistanceMatrix::distinct_distances() const {
    std::vector<double> vals;
    vals.reserve(n_ * (n_ - 1) / 2 + 1);
    vals.push_back(0.0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) vals.push_back(d_[i * n_ + j]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

void validate_soft(const SoftClustering& sc, double row_tol) {
    for (const auto& row : sc.mu) {
        if (row.size() != sc.centers.size())
            throw std::invalid_argument("soft clustering row width mismatch");
        double sum = 0.0;
        for (double v : row) {
            if (v < 0.0 || v > 1.0)
                throw std::invalid_argument("probability outside [0,1]");
            sum += v;
        }
        if (std::abs(sum - 1.0) > row_tol)
            throw std::invalid_argument("probability row does not sum to 1");
    }
}

void renormalize_rows(SoftClustering& sc, double max_drift) {
    for (auto& row : sc.mu) {
        double sum = 0.0;
        for (double& v : row) {
            if (v < 0.0) {
                if (v < -max_drift)
                    throw std::runtime_error("probability row has a negative entry");
                v = 0.0;
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > max_drift)
            throw std::runtime_error("probability row drifted beyond tolerance");
        for (double& v : row) v /= sum;
    }
}

SoftClustering to_soft(const HardClustering& hc, std::size_t n) {
    SoftClustering sc;
    sc.centers = hc.centers;
    sc.mu.assign(n, std::vector<double>(hc.centers.size(), 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        auto it = std::find(hc.centers.begin(), hc.centers.end(), hc.assign[j]);
        if (it == hc.centers.end())
            throw std::invalid_argument("assignment uses an unopened center");
        sc.mu[j][static_cast<std::size_t>(it - hc.centers.begin())] = 1.0;
    }
    return sc;
}

GroupSpec GroupSpec::from_delta(std::vector<Group> groups, double delta,
                                std::size_t n) {
    if (delta < 0.0 || delta >= 1.0)
        throw std::invalid_argument("delta must lie in [0,1)");
    GroupSpec gs;
    gs.groups = std::move(groups);
    for (const auto& g : gs.groups) {
        const double pr = static_cast<double>(g.members.size()) / static_cast<double>(n);
        gs.beta.push_back(pr * (1.0 - delta));
        gs.alpha.push_back(std::min(1.0, pr / (1.0 - delta)));
    }
    return gs;
}

GroupSpec GroupSpec::from_bounds(std::vector<Group> groups,
                                 std::vector<double> alpha,
                                 std::vector<double> beta) {
    if (groups.size() != alpha.size() || groups.size() != beta.size())
        throw std::invalid_argument("group bound arity mismatch");
    for (std::size_t r = 0; r < groups.size(); ++r) {
        if (beta[r] < 0.0 || beta[r] > alpha[r] || alpha[r] > 1.0)
            throw std::invalid_argument("need 0 <= beta_r <= alpha_r <= 1");
    }
    GroupSpec gs;
    gs.groups = std::move(groups);
    gs.alpha = std::move(alpha);
    gs.beta = std::move(beta);
    return gs;
}

void FairnessConstraintSet::add(int j1, int j2, double bound) {
    if (bound < 0.0) throw std::invalid_argument("fairness bound must be >= 0");
    if (j1 == j2)
        throw std::invalid_argument("fairness pair needs two distinct points");
    auto key = std::minmax(j1, j2);
    auto [it, inserted] = bounds_.try_emplace({key.first, key.second}, bound);
    if (!inserted) it->second = std::min(it->second, bound);
}

FairnessConstraintSet fairness_from_metric(const DistanceMatrix& dm) {
    FairnessConstraintSet fs(FairnessScope::AllPairs);
    const int n = static_cast<int>(dm.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) fs.add(i, j, dm(i, j));
    return fs;
}

double soft_cost(const SoftClustering& sc, const DistanceMatrix& dm, PNorm p) {
    if (p.infinite)
        throw std::invalid_argument("soft_cost is undefined for p = infinity");
    if (p.p < 1.0) throw std::invalid_argument("soft_cost needs p >= 1");
    double total = 0.0;
    for (std::size_t j = 0; j < sc.mu.size(); ++j) {
        for (std::size_t ci = 0; ci < sc.centers.size(); ++ci) {
            const double x = sc.mu[j][ci];
            if (x == 0.0) continue;
            total += x * std::pow(dm(j, static_cast<std::size_t>(sc.centers[ci])), p.p);
        }
    }
    return std::pow(total, 1.0 / p.p);
}

double hard_cost(const HardClustering& hc, const DistanceMatrix& dm, PNorm p) {
    if (p.infinite) {
        double radius = 0.0;
        for (std::size_t j = 0; j < hc.assign.size(); ++j)
            radius = std::max(radius, dm(j, static_cast<std::size_t>(hc.assign[j])));
        return radius;
    }
    double total = 0.0;
    for (std::size_t j = 0; j < hc.assign.size(); ++j)
        total += std::pow(dm(j, static_cast<std::size_t>(hc.assign[j])), p.p);
    return std::pow(total, 1.0 / p.p);
}

}  // namespace fairclust
