#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "fairclust/rounding.hpp"
#include "oracles.hpp"

using namespace fairclust;

namespace {

Graph path(std::size_t n) {
    Graph g;
    g.n = n;
    for (std::size_t v = 0; v + 1 < n; ++v)
        g.edges.emplace_back(static_cast<int>(v), static_cast<int>(v + 1));
    return g;
}

Graph star(std::size_t n) {
    Graph g;
    g.n = n;
    for (std::size_t v = 1; v < n; ++v)
        g.edges.emplace_back(0, static_cast<int>(v));
    return g;
}

}  // namespace

TEST_SUITE("rounding") {

TEST_CASE("support rounding picks the nearest supported center") {
    const DistanceMatrix dm = DistanceMatrix::from_explicit(
        {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    SoftClustering sc;
    sc.centers = {0, 2};
    sc.mu = {{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
    const HardClustering hc = round_support_nearest(sc, dm);
    CHECK(hc.assign[0] == 2);  // no mass on 0 itself
    CHECK(hc.assign[1] == 0);  // tie in distance, both supported: first found
    CHECK(hc.assign[2] == 0);
}

TEST_CASE("per-point rounded distance never exceeds the expected distance") {
    Rng rng(31);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 5 + rng.index(8);
        const PointSet ps = testutil::random_points(n, 2, rng);
        const DistanceMatrix dm = DistanceMatrix::from_points(ps);
        const SoftClustering sc = testutil::random_soft(n, 2 + rng.index(3), rng);
        const HardClustering hc = round_support_nearest(sc, dm);
        for (std::size_t j = 0; j < n; ++j) {
            double expected = 0.0;
            for (std::size_t c = 0; c < sc.centers.size(); ++c)
                expected += sc.mu[j][c] *
                            dm(j, static_cast<std::size_t>(sc.centers[c]));
            CHECK(dm(j, static_cast<std::size_t>(hc.assign[j])) <=
                  expected + 1e-12);
        }
    }
}

TEST_CASE("empty support throws") {
    const DistanceMatrix dm = DistanceMatrix::from_explicit({{0, 1}, {1, 0}});
    SoftClustering sc;
    sc.centers = {0};
    sc.mu = {{1.0}, {0.0}};
    CHECK_THROWS_AS(round_support_nearest(sc, dm), std::invalid_argument);
}

TEST_CASE("graph parsing") {
    std::istringstream good("3\n0 1\n\n1 2\n");
    const Graph g = parse_graph(good);
    CHECK(g.n == 3);
    CHECK(g.edges.size() == 2);

    std::istringstream empty("");
    CHECK_THROWS_AS(parse_graph(empty), std::invalid_argument);
    std::istringstream bad_count("0\n");
    CHECK_THROWS_AS(parse_graph(bad_count), std::invalid_argument);
    std::istringstream half_edge("2\n0\n");
    CHECK_THROWS_AS(parse_graph(half_edge), std::invalid_argument);
    std::istringstream loop("2\n1 1\n");
    CHECK_THROWS_AS(parse_graph(loop), std::invalid_argument);
    std::istringstream range("2\n0 2\n");
    CHECK_THROWS_AS(parse_graph(range), std::invalid_argument);
}

TEST_CASE("two-valued metric from a graph") {
    const Graph g = path(3);
    const DistanceMatrix dm = domset_to_metric(g);
    CHECK(dm(0, 1) == 1.0);
    CHECK(dm(1, 2) == 1.0);
    CHECK(dm(0, 2) == 2.0);
    CHECK(dm(0, 0) == 0.0);
}

TEST_CASE("dominating set brute force matches the branching oracle") {
    Rng rng(37);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 2 + rng.index(6);
        const Graph g = testutil::random_graph(n, rng.range(0.1, 0.9), rng);
        for (std::size_t k = 1; k <= 3; ++k)
            CHECK(domset_bruteforce(g, k) == testutil::domset_oracle(g, k));
    }
}

TEST_CASE("star has a dominating singleton, edgeless graphs do not") {
    CHECK(domset_bruteforce(star(5), 1));
    Graph lonely;
    lonely.n = 3;
    CHECK_FALSE(domset_bruteforce(lonely, 2));
    CHECK(domset_bruteforce(lonely, 3));
}

TEST_CASE("max expected distance on a star with one center") {
    // center 0 covers everything at distance 1: putting all mass there keeps
    // every distribution identical, so the fairness caps are slack
    const Graph g = star(4);
    const DistanceMatrix dm = domset_to_metric(g);
    FairnessConstraintSet fairness;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            fairness.add(i, j, dm(static_cast<std::size_t>(i),
                                  static_cast<std::size_t>(j)) /
                                   2.0);
    const double opt = min_max_expected_distance(dm, 1, fairness);
    CHECK(opt <= 1.0 + 1e-6);
}

TEST_CASE("reduction report separates yes and no instances") {
    // star: dominating set of size 1 exists
    const ReductionReport yes = reduction_report(star(5), 1);
    CHECK(yes.domset);
    CHECK(yes.fair_opt < 2.0 - 1e-6);
    CHECK(yes.agrees);

    // edgeless triangle with k = 1: no dominating singleton
    Graph lonely;
    lonely.n = 3;
    const ReductionReport no = reduction_report(lonely, 1);
    CHECK_FALSE(no.domset);
    CHECK(no.fair_opt >= 2.0 - 1e-6);
    CHECK(no.agrees);
}

TEST_CASE("verify_reduction holds on fixed families") {
    for (std::size_t n = 3; n <= 6; ++n) {
        CHECK(verify_reduction(path(n), 1));
        CHECK(verify_reduction(path(n), 2));
        CHECK(verify_reduction(star(n), 1));
    }
}

}  // TEST_SUITE
