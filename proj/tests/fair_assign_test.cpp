#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fairclust/audit.hpp"
#include "fairclust/divergence.hpp"
#include "fairclust/fair_assign.hpp"
#include "fairclust/vanilla.hpp"
#include "oracles.hpp"

using namespace fairclust;

namespace {

double tv_rows(const SoftClustering& sc, int a, int b) {
    double s = 0.0;
    for (std::size_t c = 0; c < sc.num_centers(); ++c)
        s += std::fabs(sc.mu[static_cast<std::size_t>(a)][c] -
                       sc.mu[static_cast<std::size_t>(b)][c]);
    return 0.5 * s;
}

// k = 2 reference: distributions are (t_j, 1 - t_j), TV(i,j) = |t_i - t_j|;
// scan a grid over the t vector.
double grid_oracle_k2(const DistanceMatrix& dm, const std::vector<int>& centers,
                      const FairnessConstraintSet& fairness, PNorm p,
                      std::size_t steps) {
    const std::size_t n = dm.size();
    std::vector<double> t(n, 0.0);
    std::vector<double> d0(n), d1(n);
    for (std::size_t j = 0; j < n; ++j) {
        d0[j] = std::pow(dm(j, static_cast<std::size_t>(centers[0])), p.p);
        d1[j] = std::pow(dm(j, static_cast<std::size_t>(centers[1])), p.p);
    }
    double best = 1e300;
    const auto total = static_cast<std::size_t>(
        std::pow(static_cast<double>(steps + 1), static_cast<double>(n)));
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t rem = code;
        for (std::size_t j = 0; j < n; ++j) {
            t[j] = static_cast<double>(rem % (steps + 1)) /
                   static_cast<double>(steps);
            rem /= steps + 1;
        }
        bool ok = true;
        for (const auto& [pair, bound] : fairness.bounds())
            if (std::fabs(t[static_cast<std::size_t>(pair.first)] -
                          t[static_cast<std::size_t>(pair.second)]) >
                bound + 1e-12) {
                ok = false;
                break;
            }
        if (!ok) continue;
        double cost = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            cost += t[j] * d0[j] + (1.0 - t[j]) * d1[j];
        best = std::min(best, cost);
    }
    return std::pow(best, 1.0 / p.p);
}

}  // namespace

TEST_SUITE("fair_assign") {

TEST_CASE("unconstrained program reproduces the nearest-center assignment") {
    Rng rng(5);
    const PointSet ps = testutil::random_points(12, 2, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    const std::vector<int> centers{1, 5, 9};
    const SoftClustering sc =
        solve_fair_assign(dm, centers, FairnessConstraintSet{},
                          PNorm::finite(1.0));
    double nearest = 0.0;
    for (std::size_t j = 0; j < 12; ++j) {
        double d = 1e300;
        for (int c : centers)
            d = std::min(d, dm(j, static_cast<std::size_t>(c)));
        nearest += d;
    }
    CHECK(soft_cost(sc, dm, PNorm::finite(1.0)) == doctest::Approx(nearest));
}

TEST_CASE("bounds at or above one change nothing") {
    Rng rng(6);
    const PointSet ps = testutil::random_points(10, 2, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    FairnessConstraintSet loose;
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j) loose.add(i, j, 1.0);
    const std::vector<int> centers{0, 4};
    const SoftClustering a =
        solve_fair_assign(dm, centers, loose, PNorm::finite(2.0));
    const SoftClustering b = solve_fair_assign(
        dm, centers, FairnessConstraintSet{}, PNorm::finite(2.0));
    CHECK(soft_cost(a, dm, PNorm::finite(2.0)) ==
          doctest::Approx(soft_cost(b, dm, PNorm::finite(2.0))));
}

TEST_CASE("a zero bound forces identical distributions") {
    Rng rng(7);
    const PointSet ps = testutil::random_points(8, 2, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    FairnessConstraintSet fc;
    fc.add(0, 7, 0.0);
    const SoftClustering sc =
        solve_fair_assign(dm, {2, 5}, fc, PNorm::finite(1.0));
    CHECK(tv_rows(sc, 0, 7) <= 1e-7);
}

TEST_CASE("lp optimum matches a dense grid scan for k = 2") {
    Rng rng(8);
    for (int t = 0; t < 4; ++t) {
        const PointSet ps = testutil::random_points(4, 2, rng);
        const DistanceMatrix dm = DistanceMatrix::from_points(ps);
        FairnessConstraintSet fc;
        fc.add(0, 1, rng.range(0.05, 0.5));
        fc.add(2, 3, rng.range(0.05, 0.5));
        const PNorm p = t % 2 == 0 ? PNorm::finite(1.0) : PNorm::finite(2.0);
        const std::vector<int> centers{0, 3};
        const SoftClustering sc = solve_fair_assign(dm, centers, fc, p);
        const double lp_cost = soft_cost(sc, dm, p);
        const double ref = grid_oracle_k2(dm, centers, fc, p, 80);
        CHECK(lp_cost <= ref + 1e-9);        // grid is a restriction
        CHECK(lp_cost >= ref - 0.12);        // grid resolution slack
    }
}

TEST_CASE("exact optimality on a tiny program via vertex enumeration") {
    Rng rng(9);
    const PointSet ps = testutil::random_points(3, 2, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    FairnessConstraintSet fc;
    fc.add(0, 2, 0.25);
    const AssignProgram ap =
        build_fair_assign(dm, {0, 1}, fc, PNorm::finite(1.0));
    const lp::LpSolution sol = lp::solve(ap.prog);
    REQUIRE(sol.status == lp::Status::Optimal);
    const testutil::OracleLp ref = testutil::lp_vertex_oracle(ap.prog);
    REQUIRE(ref.feasible);
    CHECK(sol.objective == doctest::Approx(ref.objective).epsilon(1e-7));
}

TEST_CASE("only total variation has a linear form") {
    Rng rng(10);
    const PointSet ps = testutil::random_points(5, 2, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    FairnessConstraintSet fc;
    fc.add(0, 1, 0.3);
    CHECK_THROWS_AS(build_fair_assign(dm, {0, 1}, fc, PNorm::finite(1.0),
                                      DivergenceKind::KullbackLeibler),
                    std::invalid_argument);
}

TEST_CASE("alg_if output is fair and costs at least stage 1's optimum "
          "assignment") {
    Rng rng(11);
    for (int t = 0; t < 5; ++t) {
        const std::size_t n = 10 + rng.index(8);
        const PointSet ps = testutil::random_points(n, 2, rng);
        const DistanceMatrix dm = DistanceMatrix::from_points(ps);
        const PNorm p = t % 2 == 0 ? PNorm::finite(2.0) : PNorm::finite(1.0);
        const FairnessConstraintSet fc = fairness_f1(dm, 2);
        const AlgResult res = alg_if(dm, &ps, 3, p, fc, 77 + t);
        CHECK(count_violations(res.soft, fc).violations == 0);
        CHECK(res.fair_cost >= -1e-9);
        CHECK(res.soft.centers == res.stage1.centers);
    }
}

TEST_CASE("theorem-form bound on a small instance") {
    Rng rng(12);
    const PointSet ps = testutil::random_points(12, 2, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    const FairnessConstraintSet fc = fairness_f1(dm, 2);
    const PNorm p = PNorm::finite(2.0);
    const AlgResult res = alg_if(dm, &ps, 2, p, fc, 5);
    const double lb = lower_bound(dm, 2, fc, p);
    const double lb_vanilla = lower_bound(dm, 2, FairnessConstraintSet{}, p);
    REQUIRE(lb_vanilla > 0.0);
    const double rho = res.stage1_cost / lb_vanilla;
    CHECK(res.fair_cost <=
          std::pow(3.0, 0.5) * (rho + 2.0) * lb + 1e-9);
    CHECK(res.fair_cost >= lb - 1e-9);
}

TEST_CASE("lower bound never exceeds the achieved fair cost") {
    Rng rng(13);
    for (int t = 0; t < 3; ++t) {
        const std::size_t n = 8 + rng.index(5);
        const PointSet ps = testutil::random_points(n, 2, rng);
        const DistanceMatrix dm = DistanceMatrix::from_points(ps);
        const FairnessConstraintSet fc = fairness_f2(dm, 2);
        const PNorm p = PNorm::finite(1.0);
        const AlgResult res = alg_if(dm, &ps, 2, p, fc, 3 + t);
        CHECK(lower_bound(dm, 2, fc, p) <= res.fair_cost + 1e-7);
    }
}

TEST_CASE("lower bound refuses oversized instances") {
    Rng rng(14);
    const PointSet ps = testutil::random_points(101, 1, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    CHECK_THROWS_AS(
        lower_bound(dm, 2, FairnessConstraintSet{}, PNorm::finite(1.0)),
        std::invalid_argument);
}

TEST_CASE("uniform solution is fair for any bounds") {
    const SoftClustering sc = uniform_solution(6, {0, 3, 5});
    CHECK_NOTHROW(validate_soft(sc));
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) CHECK(tv_rows(sc, i, j) == 0.0);
}

TEST_CASE("group spec feasibility matches the sandwich arithmetic") {
    std::vector<Group> groups{{"a", {0, 1, 2}}, {"b", {2, 3}}};  // overlap at 2
    // alpha, beta chosen so group a passes and tightening beta breaks it
    GroupSpec ok = GroupSpec::from_bounds(groups, {0.8, 0.6}, {0.4, 0.2});
    CHECK(group_spec_feasible(ok, 5));
    GroupSpec bad = GroupSpec::from_bounds(groups, {0.8, 0.6}, {0.7, 0.2});
    CHECK_FALSE(group_spec_feasible(bad, 5));  // 0.7*5 = 3.5 > |a| = 3
    GroupSpec tight = GroupSpec::from_bounds(groups, {0.5, 0.6}, {0.2, 0.2});
    CHECK_FALSE(group_spec_feasible(tight, 5));  // 0.5*5 = 2.5 < |a| = 3
}

TEST_CASE("combined solve honors overlapping group sandwiches") {
    Rng rng(15);
    const PointSet ps = testutil::random_points(10, 2, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    std::vector<Group> groups{{"a", {0, 1, 2, 3, 4, 5}}, {"b", {4, 5, 6, 7}}};
    const GroupSpec gs = GroupSpec::from_delta(groups, 0.2, 10);
    const FairnessConstraintSet fc = fairness_f1(dm, 2);
    const AlgResult res = alg_cf(dm, &ps, 2, PNorm::finite(1.0), fc, gs, 21);
    for (std::size_t c = 0; c < res.soft.num_centers(); ++c) {
        double total = 0.0;
        for (std::size_t j = 0; j < 10; ++j) total += res.soft.mu[j][c];
        for (std::size_t r = 0; r < 2; ++r) {
            double mass = 0.0;
            for (int j : gs.groups[r].members)
                mass += res.soft.mu[static_cast<std::size_t>(j)][c];
            CHECK(mass <= gs.alpha[r] * total + 1e-6);
            CHECK(mass >= gs.beta[r] * total - 1e-6);
        }
    }
    // within-group pairs stay fair
    for (const auto& [pair, bound] : fc.bounds()) {
        const bool same_a =
            pair.first <= 5 && pair.second <= 5;
        const bool same_b = pair.first >= 4 && pair.second >= 4 &&
                            pair.first <= 7 && pair.second <= 7;
        if (same_a || same_b)
            CHECK(tv_rows(res.soft, pair.first, pair.second) <= bound + 1e-6);
    }
}

TEST_CASE("infeasible group bounds are rejected up front") {
    Rng rng(16);
    const PointSet ps = testutil::random_points(6, 2, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    std::vector<Group> groups{{"a", {0}}};
    const GroupSpec gs = GroupSpec::from_bounds(groups, {1.0}, {0.9});
    CHECK_FALSE(group_spec_feasible(gs, 6));  // 0.9*6 = 5.4 > 1
    bool threw = false;
    try {
        alg_cf(dm, &ps, 2, PNorm::finite(1.0), FairnessConstraintSet{}, gs, 1);
    } catch (const std::invalid_argument& e) {
        threw = true;
        CHECK(std::string(e.what()).find("beta_r*n <= |G_r| <= alpha_r*n") !=
              std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("phi mapping aggregates mass and never widens a tv gap") {
    Rng rng(17);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 6 + rng.index(6);
        const PointSet ps = testutil::random_points(n, 2, rng);
        const DistanceMatrix dm = DistanceMatrix::from_points(ps);
        const SoftClustering sc = testutil::random_soft(n, 2 + rng.index(3), rng);
        std::vector<int> fresh;
        for (std::size_t j = 0; j < n; ++j)
            if (rng.unit() < 0.5) fresh.push_back(static_cast<int>(j));
        if (fresh.empty()) fresh.push_back(0);
        const SoftClustering mapped = phi_map_solution(sc, fresh, dm);
        CHECK(mapped.centers == fresh);
        CHECK_NOTHROW(validate_soft(mapped));
        for (int i = 0; i < static_cast<int>(n); ++i)
            for (int j = i + 1; j < static_cast<int>(n); ++j)
                CHECK(tv_rows(mapped, i, j) <= tv_rows(sc, i, j) + 1e-12);
    }
}

TEST_CASE("phi mapping onto the same centers is the identity") {
    Rng rng(18);
    const PointSet ps = testutil::random_points(7, 2, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    const SoftClustering sc = testutil::random_soft(7, 3, rng);
    const SoftClustering mapped = phi_map_solution(sc, sc.centers, dm);
    for (std::size_t j = 0; j < 7; ++j)
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(mapped.mu[j][c] == doctest::Approx(sc.mu[j][c]));
}

TEST_CASE("fair k-center radius semantics and feasibility") {
    Rng rng(19);
    for (int t = 0; t < 4; ++t) {
        const std::size_t n = 7 + rng.index(4);
        const PointSet ps = testutil::random_points(n, 2, rng);
        const DistanceMatrix dm = DistanceMatrix::from_points(ps);
        const FairnessConstraintSet fc = fairness_f1(dm, 2);
        const KCenterResult res = fair_kcenter(dm, 2, fc);
        CHECK(res.radius == doctest::Approx(4.0 * res.guess));
        CHECK(res.guesses_tried >= 1);
        CHECK(support_radius(res.soft, dm) <= res.radius + 1e-9);
        CHECK(count_violations(res.soft, fc).violations == 0);
        CHECK_NOTHROW(validate_soft(res.soft));
    }
}

TEST_CASE("guess feasibility is monotone in the radius") {
    Rng rng(20);
    const PointSet ps = testutil::random_points(9, 2, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    const FairnessConstraintSet fc = fairness_f1(dm, 2);
    const HardClustering hc = gonzalez_kcenter(dm, 2);
    bool seen_feasible = false;
    for (double guess : dm.distinct_distances()) {
        const bool ok = kcenter_guess_feasible(dm, hc.centers, fc, guess,
                                               nullptr, nullptr);
        if (seen_feasible) CHECK(ok);
        seen_feasible = seen_feasible || ok;
    }
    CHECK(seen_feasible);
}

TEST_CASE("fair k-center stays within 4x of the exhaustive optimum") {
    Rng rng(22);
    for (int t = 0; t < 3; ++t) {
        const std::size_t n = 6 + rng.index(3);
        const PointSet ps = testutil::random_points(n, 2, rng);
        const DistanceMatrix dm = DistanceMatrix::from_points(ps);
        const FairnessConstraintSet fc = fairness_f1(dm, 2);
        const KCenterResult res = fair_kcenter(dm, 2, fc);
        const double opt = testutil::fair_kcenter_opt(dm, 2, fc);
        CHECK(res.radius <= 4.0 * opt + 1e-9);
    }
}

}  // TEST_SUITE
