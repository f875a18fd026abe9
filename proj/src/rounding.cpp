#include "fairclust/rounding.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fairclust/lp.hpp"

namespace fairclust {

HardClustering round_support_nearest(const SoftClustering& sc,
                                     const DistanceMatrix& dm,
                                     double mass_tol) {
    HardClustering hc;
    hc.centers = sc.centers;
    hc.assign.assign(sc.mu.size(), -1);
    for (std::size_t j = 0; j < sc.mu.size(); ++j) {
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < sc.centers.size(); ++c) {
            if (sc.mu[j][c] <= mass_tol) continue;
            const double d = dm(j, static_cast<std::size_t>(sc.centers[c]));
            if (d < best_d) {
                best_d = d;
                hc.assign[j] = sc.centers[c];
            }
        }
        if (hc.assign[j] < 0)
            throw std::invalid_argument("point has an empty support");
    }
    return hc;
}

Graph parse_graph(std::istream& is) {
    Graph g;
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("graph input is empty");
    {
        std::istringstream head(line);
        long long n = -1;
        if (!(head >> n) || n <= 0)
            throw std::invalid_argument("first line must be the vertex count");
        g.n = static_cast<std::size_t>(n);
    }
    while (std::getline(is, line)) {
        std::istringstream row(line);
        long long u, v;
        if (!(row >> u)) continue;  // blank line
        if (!(row >> v)) throw std::invalid_argument("edge line needs two ids");
        if (u < 0 || v < 0 || u >= static_cast<long long>(g.n) ||
            v >= static_cast<long long>(g.n))
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loops are not allowed");
        g.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return g;
}

DistanceMatrix domset_to_metric(const Graph& g) {
    std::vector<std::vector<double>> d(g.n, std::vector<double>(g.n, 2.0));
    for (std::size_t i = 0; i < g.n; ++i) d[i][i] = 0.0;
    for (const auto& [u, v] : g.edges) {
        d[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1.0;
        d[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1.0;
    }
    return DistanceMatrix::from_explicit(std::move(d));
}

bool domset_bruteforce(const Graph& g, std::size_t k) {
    if (g.n > 20) throw std::invalid_argument("dominating set search capped at n = 20");
    std::vector<std::uint32_t> cover(g.n);
    for (std::size_t v = 0; v < g.n; ++v) cover[v] = 1u << v;
    for (const auto& [u, v] : g.edges) {
        cover[static_cast<std::size_t>(u)] |= 1u << v;
        cover[static_cast<std::size_t>(v)] |= 1u << u;
    }
    const std::uint32_t full = (g.n == 32) ? ~0u : (1u << g.n) - 1;
    for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > k) continue;
        std::uint32_t covered = 0;
        for (std::size_t v = 0; v < g.n; ++v)
            if (mask & (1u << v)) covered |= cover[v];
        if (covered == full) return true;
    }
    return false;
}

namespace {

// Minimum of max_v E[d(v, c)] over assignments to a fixed center set.
double min_max_expected_for(const DistanceMatrix& dm,
                            const std::vector<int>& centers,
                            const FairnessConstraintSet& fairness) {
    const std::size_t n = dm.size();
    const std::size_t k = centers.size();

    lp::LinearProgram prog;
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = 0; j < n; ++j) prog.add_var(0.0);
    const int t = prog.add_var(1.0);

    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::pair<int, double>> coef;
        for (std::size_t c = 0; c < k; ++c)
            coef.emplace_back(static_cast<int>(c * n + j), 1.0);
        prog.add_row(std::move(coef), lp::Rel::EQ, 1.0);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::pair<int, double>> coef;
        for (std::size_t c = 0; c < k; ++c)
            coef.emplace_back(static_cast<int>(c * n + j),
                              dm(static_cast<std::size_t>(centers[c]), j));
        coef.emplace_back(t, -1.0);
        prog.add_row(std::move(coef), lp::Rel::LE, 0.0);
    }
    for (const auto& [pair, bound] : fairness.bounds()) {
        if (bound >= 1.0) continue;
        std::vector<std::pair<int, double>> cap;
        for (std::size_t c = 0; c < k; ++c) {
            const int z = prog.add_var(0.0);
            const int x1 = static_cast<int>(c * n) + pair.first;
            const int x2 = static_cast<int>(c * n) + pair.second;
            prog.add_row({{x1, 1.0}, {x2, -1.0}, {z, -1.0}}, lp::Rel::LE, 0.0);
            prog.add_row({{x2, 1.0}, {x1, -1.0}, {z, -1.0}}, lp::Rel::LE, 0.0);
            cap.emplace_back(z, 0.5);
        }
        prog.add_row(std::move(cap), lp::Rel::LE, bound);
    }

    const lp::LpSolution sol = lp::solve(prog);
    if (sol.status != lp::Status::Optimal)
        throw std::runtime_error("expected-distance program did not solve");
    return sol.objective;
}

}  // namespace

double min_max_expected_distance(const DistanceMatrix& dm, std::size_t k,
                                 const FairnessConstraintSet& fairness) {
    const std::size_t n = dm.size();
    if (n > 10)
        throw std::invalid_argument("exhaustive center search capped at n = 10");
    if (k == 0) throw std::invalid_argument("need k >= 1");

    double best = std::numeric_limits<double>::infinity();
    const std::uint32_t limit = 1u << n;
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        const auto sz = static_cast<std::size_t>(std::popcount(mask));
        if (sz == 0 || sz > k) continue;
        std::vector<int> centers;
        centers.reserve(sz);
        for (std::size_t v = 0; v < n; ++v)
            if (mask & (1u << v)) centers.push_back(static_cast<int>(v));
        best = std::min(best, min_max_expected_for(dm, centers, fairness));
    }
    return best;
}

ReductionReport reduction_report(const Graph& g, std::size_t k) {
    ReductionReport rep;
    rep.domset = domset_bruteforce(g, k);

    const DistanceMatrix dm = domset_to_metric(g);
    FairnessConstraintSet fairness(FairnessScope::AllPairs);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = i + 1; j < g.n; ++j)
            fairness.add(static_cast<int>(i), static_cast<int>(j),
                         dm(i, j) / 2.0);

    rep.fair_opt = min_max_expected_distance(dm, k, fairness);
    const bool fair_yes = rep.fair_opt < 2.0 - 1e-6;
    rep.agrees = (rep.domset == fair_yes);
    return rep;
}

bool verify_reduction(const Graph& g, std::size_t k) {
    return reduction_report(g, k).agrees;
}

}  // namespace fairclust
