#include "fairclust/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fairclust/kernels.hpp"
#include "fairclust/lp.hpp"
#include "fairclust/vanilla.hpp"

namespace fairclust {

FairnessConstraintSet fairness_f1(const DistanceMatrix& dm, std::size_t m) {
    const std::size_t n = dm.size();
    const double scale = dm.max_distance();
    if (scale <= 0.0)
        throw std::invalid_argument("all points coincide; bounds are undefined");
    FairnessConstraintSet fs(FairnessScope::AllPairs);
    std::vector<std::pair<double, int>> order(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        order.clear();
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) order.emplace_back(dm(i, j), static_cast<int>(j));
        std::sort(order.begin(), order.end());
        const std::size_t take = std::min(m, order.size());
        for (std::size_t t = 0; t < take; ++t)
            fs.add(static_cast<int>(i), order[t].second, order[t].first / scale);
    }
    return fs;
}

FairnessConstraintSet fairness_f2(const DistanceMatrix& dm, std::size_t k) {
    const std::size_t n = dm.size();
    if (k == 0) throw std::invalid_argument("need k >= 1");
    const std::size_t occupancy = std::max<std::size_t>(1, n / k);

    std::vector<double> radius(n);
    std::vector<double> sorted(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) sorted[j] = dm(i, j);
        std::sort(sorted.begin(), sorted.end());
        radius[i] = sorted[occupancy - 1];
    }

    auto directed = [&](std::size_t i, std::size_t j) {
        if (radius[i] <= 0.0) return 1.0;
        const double d = dm(i, j);
        return d <= radius[i] ? d / radius[i] : 1.0;
    };

    FairnessConstraintSet fs(FairnessScope::AllPairs);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double bound = std::min(directed(i, j), directed(j, i));
            if (bound < 1.0)
                fs.add(static_cast<int>(i), static_cast<int>(j), bound);
        }
    }
    return fs;
}

SoftClustering soften(const DistanceMatrix& dm, const std::vector<int>& centers,
                      double beta) {
    if (beta < 0.0) throw std::invalid_argument("stiffness must be >= 0");
    const std::size_t n = dm.size();
    const std::size_t k = centers.size();
    SoftClustering sc;
    sc.centers = centers;
    sc.mu.assign(n, std::vector<double>(k, 0.0));
    std::vector<double> sq(k);
    for (std::size_t j = 0; j < n; ++j) {
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            const double d = dm(j, static_cast<std::size_t>(centers[c]));
            sq[c] = d * d;
            lo = std::min(lo, sq[c]);
        }
        // Shifting by the row minimum keeps at least one weight at 1, so the
        // normalizer never underflows.
        double total = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            sc.mu[j][c] = std::exp(-beta * (sq[c] - lo));
            total += sc.mu[j][c];
        }
        for (std::size_t c = 0; c < k; ++c) sc.mu[j][c] /= total;
    }
    return sc;
}

SoftClustering soft_kmeans(const PointSet& ps, std::size_t k, double beta,
                           std::uint64_t seed) {
    const HardClustering hard = lloyd_kmeans(ps, k, seed).clustering;
    return soften(DistanceMatrix::from_points(ps), hard.centers, beta);
}

double calibrate_beta(const DistanceMatrix& dm, const std::vector<int>& centers,
                      PNorm p, double target_cost) {
    const double beta_max = 1e8;
    auto cost_at = [&](double beta) {
        return soft_cost(soften(dm, centers, beta), dm, p);
    };

    double prev = cost_at(0.0);
    for (int i = 0; i < 8; ++i) {
        const double beta = std::pow(10.0, -4.0 + 12.0 * i / 7.0);
        const double cur = cost_at(beta);
        if (cur > prev * (1.0 + 1e-9) + 1e-12)
            throw std::logic_error("softened cost increased with stiffness");
        prev = cur;
    }

    if (target_cost >= cost_at(0.0)) return 0.0;
    if (target_cost <= cost_at(beta_max)) return beta_max;

    double lo = 0.0, hi = beta_max;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cost_at(mid) >= target_cost)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

ViolationReport count_violations(const SoftClustering& sc,
                                 const FairnessConstraintSet& fairness,
                                 double tol) {
    const std::size_t k = sc.centers.size();
    std::vector<double> flat(sc.mu.size() * k);
    for (std::size_t j = 0; j < sc.mu.size(); ++j)
        std::copy(sc.mu[j].begin(), sc.mu[j].end(), flat.begin() + j * k);

    std::vector<std::pair<int, int>> pairs;
    std::vector<double> caps;
    pairs.reserve(fairness.bounds().size());
    for (const auto& [pair, bound] : fairness.bounds()) {
        pairs.push_back(pair);
        caps.push_back(bound);
    }

    const std::vector<double> gaps = kernels::tv_gaps(flat.data(), k, pairs);

    ViolationReport rep;
    rep.checked = pairs.size();
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        const double excess = gaps[t] - caps[t];
        if (excess > tol) {
            ++rep.violations;
            rep.max_excess = std::max(rep.max_excess, excess);
        }
    }
    return rep;
}

double mad(const SoftClustering& sc, const std::vector<int>& members) {
    const std::size_t n = sc.mu.size();
    const double share = static_cast<double>(members.size()) / static_cast<double>(n);
    double worst = 0.0;
    for (std::size_t c = 0; c < sc.centers.size(); ++c) {
        double group_mass = 0.0, total_mass = 0.0;
        for (std::size_t j = 0; j < n; ++j) total_mass += sc.mu[j][c];
        for (int j : members) group_mass += sc.mu[static_cast<std::size_t>(j)][c];
        worst = std::max(worst, std::abs(group_mass - share * total_mass));
    }
    return worst;
}

double emd_to_population(const DistanceMatrix& dm,
                         const std::vector<int>& members) {
    if (members.empty()) throw std::invalid_argument("empty group");
    const std::size_t n = dm.size();
    const std::size_t g = members.size();
    std::vector<double> supply(g, 1.0 / static_cast<double>(g));
    std::vector<double> demand(n, 1.0 / static_cast<double>(n));
    std::vector<std::vector<double>> cost(g, std::vector<double>(n));
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t j = 0; j < n; ++j)
            cost[a][j] = dm(static_cast<std::size_t>(members[a]), j);
    return lp::solve_transportation(supply, demand, cost).value;
}

std::vector<BiasCheck> check_bias_bound(const SoftClustering& sc,
                                        const DistanceMatrix& dm,
                                        const std::vector<Group>& groups,
                                        double tol) {
    std::vector<BiasCheck> out;
    out.reserve(groups.size());
    for (const auto& grp : groups) {
        BiasCheck bc;
        bc.group = grp.name;
        bc.mad = mad(sc, grp.members);
        bc.bound = static_cast<double>(grp.members.size()) *
                   emd_to_population(dm, grp.members);
        bc.gap = bc.bound - bc.mad;
        bc.holds = bc.mad <= bc.bound + tol;
        out.push_back(std::move(bc));
    }
    return out;
}

PointSet make_price_instance(double r, double R) {
    if (r <= 0.0 || R <= 0.0) throw std::invalid_argument("need r, R > 0");
    std::vector<std::vector<double>> pts;
    pts.reserve(10);
    for (int t = 0; t < 5; ++t) pts.push_back({r * t / 4.0});
    for (int t = 0; t < 5; ++t) pts.push_back({r + R + r * t / 4.0});
    return PointSet(std::move(pts));
}

FairnessConstraintSet price_fairness(double eps) {
    FairnessConstraintSet fs(FairnessScope::AllPairs);
    fs.add(2, 7, eps);
    return fs;
}

}  // namespace fairclust
