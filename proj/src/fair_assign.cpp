#include "fairclust/fair_assign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "fairclust/audit.hpp"
#include "fairclust/vanilla.hpp"

namespace fairclust {

namespace {

void check_centers(const std::vector<int>& centers, std::size_t n) {
    if (centers.empty()) throw std::invalid_argument("no centers given");
    std::set<int> seen;
    for (int c : centers) {
        if (c < 0 || static_cast<std::size_t>(c) >= n)
            throw std::invalid_argument("center id out of range");
        if (!seen.insert(c).second)
            throw std::invalid_argument("duplicate center id");
    }
}

void check_divergence(DivergenceKind div) {
    if (div != DivergenceKind::TotalVariation)
        throw std::invalid_argument(
            "only total-variation constraints have a linear form");
}

// Per-point group membership bitmask; groups may overlap.
std::vector<std::uint64_t> membership(const GroupSpec& gs, std::size_t n) {
    if (gs.groups.size() > 64)
        throw std::invalid_argument("more than 64 groups are not supported");
    std::vector<std::uint64_t> bits(n, 0);
    for (std::size_t r = 0; r < gs.groups.size(); ++r) {
        for (int j : gs.groups[r].members) {
            if (j < 0 || static_cast<std::size_t>(j) >= n)
                throw std::invalid_argument("group member out of range");
            bits[static_cast<std::size_t>(j)] |= std::uint64_t{1} << r;
        }
    }
    return bits;
}

// Adds the linearized total-variation cap for one pair: z_c >= |x_c,j1 -
// x_c,j2| per center and 0.5 * sum_c z_c <= bound.
void add_tv_rows(lp::LinearProgram& prog, std::size_t k, std::size_t n, int j1,
                 int j2, double bound) {
    std::vector<int> z(k);
    for (std::size_t c = 0; c < k; ++c) z[c] = prog.add_var(0.0);
    for (std::size_t c = 0; c < k; ++c) {
        const int x1 = static_cast<int>(c * n) + j1;
        const int x2 = static_cast<int>(c * n) + j2;
        prog.add_row({{x1, 1.0}, {x2, -1.0}, {z[c], -1.0}}, lp::Rel::LE, 0.0);
        prog.add_row({{x2, 1.0}, {x1, -1.0}, {z[c], -1.0}}, lp::Rel::LE, 0.0);
    }
    std::vector<std::pair<int, double>> cap;
    cap.reserve(k);
    for (std::size_t c = 0; c < k; ++c) cap.emplace_back(z[c], 0.5);
    prog.add_row(std::move(cap), lp::Rel::LE, bound);
}

// Sandwich rows for one (center block, group): beta_r * total <= group mass
// <= alpha_r * total, written as two <= 0 rows. `var_of` maps a point to its
// x variable within the block, or -1 when the variable does not exist.
template <typename VarOf>
void add_sandwich_rows(lp::LinearProgram& prog, const GroupSpec& gs,
                       const std::vector<std::uint64_t>& bits, std::size_t n,
                       VarOf var_of) {
    for (std::size_t r = 0; r < gs.groups.size(); ++r) {
        const double alpha = gs.alpha[r];
        const double beta = gs.beta[r];
        std::vector<std::pair<int, double>> hi, lo;
        hi.reserve(n);
        lo.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            const int var = var_of(j);
            if (var < 0) continue;
            const bool inside = (bits[j] >> r) & 1;
            hi.emplace_back(var, (inside ? 1.0 : 0.0) - alpha);
            lo.emplace_back(var, beta - (inside ? 1.0 : 0.0));
        }
        if (!hi.empty()) prog.add_row(std::move(hi), lp::Rel::LE, 0.0);
        if (!lo.empty()) prog.add_row(std::move(lo), lp::Rel::LE, 0.0);
    }
}

AssignProgram build_assign_core(const DistanceMatrix& dm,
                                const std::vector<int>& centers,
                                const FairnessConstraintSet& fairness, PNorm p,
                                DivergenceKind div, const GroupSpec* gs) {
    check_divergence(div);
    if (p.infinite)
        throw std::invalid_argument("assignment program needs finite p");
    const std::size_t n = dm.size();
    const std::size_t k = centers.size();
    check_centers(centers, n);

    AssignProgram ap;
    ap.k = k;
    ap.n = n;

    // The per-point equality rows below already force x <= 1, so no explicit
    // upper bounds are materialized.
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = 0; j < n; ++j)
            ap.prog.add_var(
                std::pow(dm(static_cast<std::size_t>(centers[c]), j), p.p));

    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::pair<int, double>> coef;
        coef.reserve(k);
        for (std::size_t c = 0; c < k; ++c)
            coef.emplace_back(static_cast<int>(c * n + j), 1.0);
        ap.prog.add_row(std::move(coef), lp::Rel::EQ, 1.0);
    }

    std::vector<std::uint64_t> bits;
    if (gs) bits = membership(*gs, n);

    for (const auto& [pair, bound] : fairness.bounds()) {
        if (bound >= 1.0) continue;
        if (gs && (bits[static_cast<std::size_t>(pair.first)] &
                   bits[static_cast<std::size_t>(pair.second)]) == 0)
            continue;
        add_tv_rows(ap.prog, k, n, pair.first, pair.second, bound);
    }

    if (gs) {
        for (std::size_t c = 0; c < k; ++c)
            add_sandwich_rows(ap.prog, *gs, bits, n, [&](std::size_t j) {
                return static_cast<int>(c * n + j);
            });
    }
    return ap;
}

}  // namespace

SoftClustering AssignProgram::decode(const std::vector<double>& x,
                                     const std::vector<int>& centers) const {
    SoftClustering sc;
    sc.centers = centers;
    sc.mu.assign(n, std::vector<double>(k, 0.0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t c = 0; c < k; ++c) sc.mu[j][c] = x[c * n + j];
    renormalize_rows(sc);
    validate_soft(sc);
    return sc;
}

AssignProgram build_fair_assign(const DistanceMatrix& dm,
                                const std::vector<int>& centers,
                                const FairnessConstraintSet& fairness, PNorm p,
                                DivergenceKind div) {
    return build_assign_core(dm, centers, fairness, p, div, nullptr);
}

AssignProgram build_combined(const DistanceMatrix& dm,
                             const std::vector<int>& centers,
                             const FairnessConstraintSet& fairness,
                             const GroupSpec& gs, PNorm p, DivergenceKind div) {
    return build_assign_core(dm, centers, fairness, p, div, &gs);
}

SoftClustering solve_fair_assign(const DistanceMatrix& dm,
                                 const std::vector<int>& centers,
                                 const FairnessConstraintSet& fairness, PNorm p) {
    const AssignProgram ap = build_fair_assign(dm, centers, fairness, p);
    const lp::LpSolution sol = lp::solve(ap.prog);
    if (sol.status != lp::Status::Optimal)
        throw std::runtime_error(
            "fair assignment program did not solve; it is always feasible, so "
            "this indicates a solver failure");
    return ap.decode(sol.x, centers);
}

SoftClustering solve_combined(const DistanceMatrix& dm,
                              const std::vector<int>& centers,
                              const FairnessConstraintSet& fairness,
                              const GroupSpec& gs, PNorm p) {
    const AssignProgram ap = build_combined(dm, centers, fairness, gs, p);
    const lp::LpSolution sol = lp::solve(ap.prog);
    if (sol.status == lp::Status::Infeasible)
        throw std::runtime_error(
            "combined assignment is infeasible: need beta_r*n <= |G_r| <= "
            "alpha_r*n for every group (residual " +
            std::to_string(sol.objective) + ")");
    if (sol.status != lp::Status::Optimal)
        throw std::runtime_error("combined assignment program did not solve");
    return ap.decode(sol.x, centers);
}

namespace {

HardClustering stage1_clustering(const DistanceMatrix& dm, const PointSet* ps,
                                 std::size_t k, PNorm p, std::uint64_t seed) {
    if (p.p == 2.0 && ps != nullptr) return lloyd_kmeans(*ps, k, seed).clustering;
    return local_search_kmedian(dm, k, p.p);
}

void audit_fairness(const SoftClustering& sc,
                    const FairnessConstraintSet& fairness) {
    const ViolationReport rep = count_violations(sc, fairness);
    if (rep.violations > 0)
        throw std::runtime_error(
            "solver returned an assignment violating its fairness bounds");
}

}  // namespace

AlgResult alg_if(const DistanceMatrix& dm, const PointSet* ps, std::size_t k,
                 PNorm p, const FairnessConstraintSet& fairness,
                 std::uint64_t seed) {
    if (p.infinite)
        throw std::invalid_argument("use fair_kcenter for p = infinity");
    AlgResult res;
    res.stage1 = stage1_clustering(dm, ps, k, p, seed);
    res.stage1_cost = hard_cost(res.stage1, dm, p);
    res.soft = solve_fair_assign(dm, res.stage1.centers, fairness, p);
    res.fair_cost = soft_cost(res.soft, dm, p);
    audit_fairness(res.soft, fairness);
    return res;
}

AlgResult alg_cf(const DistanceMatrix& dm, const PointSet* ps, std::size_t k,
                 PNorm p, const FairnessConstraintSet& fairness,
                 const GroupSpec& gs, std::uint64_t seed) {
    if (p.infinite)
        throw std::invalid_argument("use fair_kcenter for p = infinity");
    if (!group_spec_feasible(gs, dm.size()))
        throw std::invalid_argument(
            "group bounds are infeasible: need beta_r*n <= |G_r| <= alpha_r*n "
            "for every group");
    AlgResult res;
    res.stage1 = stage1_clustering(dm, ps, k, p, seed);
    res.stage1_cost = hard_cost(res.stage1, dm, p);
    res.soft = solve_combined(dm, res.stage1.centers, fairness, gs, p);
    res.fair_cost = soft_cost(res.soft, dm, p);
    return res;
}

double lower_bound(const DistanceMatrix& dm, std::size_t k,
                   const FairnessConstraintSet& fairness, PNorm p,
                   const GroupSpec* gs) {
    if (p.infinite)
        throw std::invalid_argument("lower bound needs finite p");
    const std::size_t n = dm.size();
    if (n > 100)
        throw std::invalid_argument(
            "lower bound program is quadratic in n; refusing n > 100");

    lp::LinearProgram prog;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            prog.add_var(std::pow(dm(i, j), p.p));
    const int y0 = static_cast<int>(n * n);
    for (std::size_t i = 0; i < n; ++i) prog.add_var(0.0, 1.0);

    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::pair<int, double>> coef;
        coef.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            coef.emplace_back(static_cast<int>(i * n + j), 1.0);
        prog.add_row(std::move(coef), lp::Rel::EQ, 1.0);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            prog.add_row({{static_cast<int>(i * n + j), 1.0},
                          {y0 + static_cast<int>(i), -1.0}},
                         lp::Rel::LE, 0.0);
    {
        std::vector<std::pair<int, double>> coef;
        coef.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            coef.emplace_back(y0 + static_cast<int>(i), 1.0);
        prog.add_row(std::move(coef), lp::Rel::LE, static_cast<double>(k));
    }

    std::vector<std::uint64_t> bits;
    if (gs) bits = membership(*gs, n);

    for (const auto& [pair, bound] : fairness.bounds()) {
        if (bound >= 1.0) continue;
        if (gs && (bits[static_cast<std::size_t>(pair.first)] &
                   bits[static_cast<std::size_t>(pair.second)]) == 0)
            continue;
        add_tv_rows(prog, n, n, pair.first, pair.second, bound);
    }
    if (gs) {
        for (std::size_t i = 0; i < n; ++i)
            add_sandwich_rows(prog, *gs, bits, n, [&](std::size_t j) {
                return static_cast<int>(i * n + j);
            });
    }

    const lp::LpSolution sol = lp::solve(prog);
    if (sol.status != lp::Status::Optimal)
        throw std::runtime_error("lower bound program did not solve");
    return std::pow(std::max(0.0, sol.objective), 1.0 / p.p);
}

SoftClustering uniform_solution(std::size_t n, std::vector<int> centers) {
    SoftClustering sc;
    const double w = 1.0 / static_cast<double>(centers.size());
    sc.centers = std::move(centers);
    sc.mu.assign(n, std::vector<double>(sc.centers.size(), w));
    return sc;
}

int phi_nearest(std::size_t i, const std::vector<int>& centers,
                const DistanceMatrix& dm) {
    int best = centers[0];
    double best_d = dm(i, static_cast<std::size_t>(centers[0]));
    for (std::size_t t = 1; t < centers.size(); ++t) {
        const double d = dm(i, static_cast<std::size_t>(centers[t]));
        if (d < best_d || (d == best_d && centers[t] < best)) {
            best_d = d;
            best = centers[t];
        }
    }
    return best;
}

SoftClustering phi_map_solution(const SoftClustering& sc,
                                const std::vector<int>& new_centers,
                                const DistanceMatrix& dm) {
    check_centers(new_centers, dm.size());
    std::vector<std::size_t> target(sc.centers.size());
    for (std::size_t t = 0; t < sc.centers.size(); ++t) {
        const int c = phi_nearest(static_cast<std::size_t>(sc.centers[t]),
                                  new_centers, dm);
        target[t] = static_cast<std::size_t>(
            std::find(new_centers.begin(), new_centers.end(), c) -
            new_centers.begin());
    }
    SoftClustering out;
    out.centers = new_centers;
    out.mu.assign(sc.mu.size(), std::vector<double>(new_centers.size(), 0.0));
    for (std::size_t j = 0; j < sc.mu.size(); ++j)
        for (std::size_t t = 0; t < sc.centers.size(); ++t)
            out.mu[j][target[t]] += sc.mu[j][t];
    renormalize_rows(out);
    return out;
}

bool group_spec_feasible(const GroupSpec& gs, std::size_t n) {
    for (std::size_t r = 0; r < gs.groups.size(); ++r) {
        const double sz = static_cast<double>(gs.groups[r].members.size());
        const double nn = static_cast<double>(n);
        if (gs.beta[r] * nn > sz + 1e-12) return false;
        if (sz > gs.alpha[r] * nn + 1e-12) return false;
    }
    return true;
}

double support_radius(const SoftClustering& sc, const DistanceMatrix& dm,
                      double mass_tol) {
    double radius = 0.0;
    for (std::size_t j = 0; j < sc.mu.size(); ++j)
        for (std::size_t c = 0; c < sc.centers.size(); ++c)
            if (sc.mu[j][c] > mass_tol)
                radius = std::max(
                    radius, dm(j, static_cast<std::size_t>(sc.centers[c])));
    return radius;
}

bool kcenter_guess_feasible(const DistanceMatrix& dm,
                            const std::vector<int>& centers,
                            const FairnessConstraintSet& fairness, double guess,
                            const GroupSpec* gs, SoftClustering* out) {
    const std::size_t n = dm.size();
    const std::size_t k = centers.size();
    const double reach = 4.0 * guess + 1e-12;

    // var id for each in-ball (center, point) pair; -1 when the center is
    // outside the point's ball.
    std::vector<int> var(k * n, -1);
    lp::LinearProgram prog;
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = 0; j < n; ++j)
            if (dm(static_cast<std::size_t>(centers[c]), j) <= reach)
                var[c * n + j] = prog.add_var(0.0);

    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::pair<int, double>> coef;
        for (std::size_t c = 0; c < k; ++c)
            if (var[c * n + j] >= 0) coef.emplace_back(var[c * n + j], 1.0);
        if (coef.empty()) return false;
        prog.add_row(std::move(coef), lp::Rel::EQ, 1.0);
    }

    std::vector<std::uint64_t> bits;
    if (gs) bits = membership(*gs, n);

    for (const auto& [pair, bound] : fairness.bounds()) {
        if (bound >= 1.0) continue;
        if (gs && (bits[static_cast<std::size_t>(pair.first)] &
                   bits[static_cast<std::size_t>(pair.second)]) == 0)
            continue;
        const int j1 = pair.first, j2 = pair.second;
        std::vector<std::pair<int, double>> cap;
        for (std::size_t c = 0; c < k; ++c) {
            const int x1 = var[c * n + static_cast<std::size_t>(j1)];
            const int x2 = var[c * n + static_cast<std::size_t>(j2)];
            if (x1 < 0 && x2 < 0) continue;
            const int z = prog.add_var(0.0);
            cap.emplace_back(z, 0.5);
            if (x1 >= 0 && x2 >= 0) {
                prog.add_row({{x1, 1.0}, {x2, -1.0}, {z, -1.0}}, lp::Rel::LE, 0.0);
                prog.add_row({{x2, 1.0}, {x1, -1.0}, {z, -1.0}}, lp::Rel::LE, 0.0);
            } else {
                prog.add_row({{x1 >= 0 ? x1 : x2, 1.0}, {z, -1.0}}, lp::Rel::LE,
                             0.0);
            }
        }
        if (!cap.empty()) prog.add_row(std::move(cap), lp::Rel::LE, bound);
    }

    if (gs) {
        for (std::size_t c = 0; c < k; ++c)
            add_sandwich_rows(prog, *gs, bits, n, [&](std::size_t j) {
                return var[c * n + j];
            });
    }

    const lp::LpSolution sol = lp::solve(prog);
    if (sol.status != lp::Status::Optimal) return false;

    if (out) {
        out->centers = centers;
        out->mu.assign(n, std::vector<double>(k, 0.0));
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t j = 0; j < n; ++j)
                if (var[c * n + j] >= 0)
                    out->mu[j][c] = sol.x[static_cast<std::size_t>(var[c * n + j])];
        renormalize_rows(*out);
        validate_soft(*out);
    }
    return true;
}

KCenterResult fair_kcenter(const DistanceMatrix& dm, std::size_t k,
                           const FairnessConstraintSet& fairness,
                           const GroupSpec* gs) {
    const HardClustering vanilla = gonzalez_kcenter(dm, k);
    KCenterResult res;
    for (double guess : dm.distinct_distances()) {
        ++res.guesses_tried;
        if (kcenter_guess_feasible(dm, vanilla.centers, fairness, guess, gs,
                                   &res.soft)) {
            res.guess = guess;
            res.radius = 4.0 * guess;
            return res;
        }
    }
    throw std::runtime_error(
        "no feasible radius guess; the group bounds are unsatisfiable");
}

}  // namespace fairclust
