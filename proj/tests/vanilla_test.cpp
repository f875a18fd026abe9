#include "doctest.h"

#include <algorithm>
#include <set>

#include "fairclust/core.hpp"
#include "fairclust/vanilla.hpp"
#include "oracles.hpp"

using namespace fairclust;

TEST_SUITE("vanilla") {

TEST_CASE("lloyd recovers well separated blobs") {
    Rng rng(3);
    const PointSet ps = testutil::gaussian_blobs(
        {{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}}, 8, 0.3, rng);
    const LloydResult res = lloyd_kmeans(ps, 3, 42);
    // every blob maps to one center
    for (std::size_t b = 0; b < 3; ++b) {
        std::set<int> owners;
        for (std::size_t j = 0; j < 8; ++j)
            owners.insert(res.clustering.assign[b * 8 + j]);
        CHECK(owners.size() == 1);
    }
    CHECK(res.clustering.centers.size() == 3);
}

TEST_CASE("lloyd sse trace is non-increasing") {
    Rng rng(17);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const PointSet ps = testutil::random_points(40, 3, rng);
        const LloydResult res = lloyd_kmeans(ps, 4, seed);
        for (std::size_t i = 1; i < res.sse.size(); ++i)
            CHECK(res.sse[i] <= res.sse[i - 1] + 1e-9);
    }
}

TEST_CASE("lloyd centers are sorted distinct data ids") {
    Rng rng(21);
    const PointSet ps = testutil::random_points(25, 2, rng);
    const LloydResult res = lloyd_kmeans(ps, 5, 9);
    const auto& c = res.clustering.centers;
    CHECK(std::is_sorted(c.begin(), c.end()));
    CHECK(std::set<int>(c.begin(), c.end()).size() == c.size());
    for (int id : c) {
        CHECK(id >= 0);
        CHECK(id < 25);
    }
    // assignment points at an opened center
    for (int a : res.clustering.assign)
        CHECK(std::find(c.begin(), c.end(), a) != c.end());
}

TEST_CASE("lloyd is deterministic in the seed") {
    Rng rng(31);
    const PointSet ps = testutil::random_points(30, 2, rng);
    const LloydResult a = lloyd_kmeans(ps, 3, 1234);
    const LloydResult b = lloyd_kmeans(ps, 3, 1234);
    CHECK(a.clustering.centers == b.clustering.centers);
    CHECK(a.clustering.assign == b.clustering.assign);
    CHECK(a.sse == b.sse);
}

TEST_CASE("duplicated points survive (empty cluster reseeding)") {
    // 3 distinct locations, k = 3, many duplicates
    PointSet ps({{0.0}, {0.0}, {0.0}, {0.0}, {5.0}, {5.0}, {9.0}, {9.0}});
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const LloydResult res = lloyd_kmeans(ps, 3, seed);
        CHECK(res.clustering.centers.size() <= 3);
        const DistanceMatrix dm = DistanceMatrix::from_points(ps);
        CHECK(hard_cost(res.clustering, dm, PNorm::finite(2.0)) ==
              doctest::Approx(0.0));
    }
}

TEST_CASE("local search finds the 1d k-median optimum") {
    // clusters {0,1,2} and {10,11,12}: optimum picks the two medians
    PointSet ps({{0.0}, {1.0}, {2.0}, {10.0}, {11.0}, {12.0}});
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    const HardClustering hc = local_search_kmedian(dm, 2, 1.0);
    CHECK(hc.centers == std::vector<int>{1, 4});
    CHECK(hard_cost(hc, dm, PNorm::finite(1.0)) == doctest::Approx(4.0));
}

TEST_CASE("local search handles p = 2 powers") {
    Rng rng(41);
    const PointSet ps = testutil::random_points(12, 2, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    const HardClustering hc = local_search_kmedian(dm, 3, 2.0);
    CHECK(hc.centers.size() == 3);
    // single swaps cannot improve; spot-check against every 3-subset
    double best = 1e300;
    for (int a = 0; a < 12; ++a)
        for (int b = a + 1; b < 12; ++b)
            for (int c = b + 1; c < 12; ++c) {
                HardClustering cand;
                cand.centers = {a, b, c};
                cand.assign.resize(12);
                for (std::size_t j = 0; j < 12; ++j) {
                    int bestc = a;
                    for (int cc : {b, c})
                        if (dm(j, static_cast<std::size_t>(cc)) <
                            dm(j, static_cast<std::size_t>(bestc)))
                            bestc = cc;
                    cand.assign[j] = bestc;
                }
                best = std::min(best, hard_cost(cand, dm, PNorm::finite(2.0)));
            }
    const double got = hard_cost(hc, dm, PNorm::finite(2.0));
    // single-swap local optima of squared cost are within factor 25 of the
    // optimum; on this instance it should be essentially exact
    CHECK(got <= best * 1.2 + 1e-9);
}

TEST_CASE("gonzalez radius is within twice the exhaustive optimum") {
    Rng rng(53);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 6 + rng.index(7);
        const std::size_t k = 2 + rng.index(2);
        const PointSet ps = testutil::random_points(n, 2, rng);
        const DistanceMatrix dm = DistanceMatrix::from_points(ps);
        const HardClustering hc = gonzalez_kcenter(dm, k);
        const double opt = testutil::vanilla_kcenter_opt(dm, k);
        CHECK(hard_cost(hc, dm, PNorm::infinity()) <= 2.0 * opt + 1e-9);
    }
}

TEST_CASE("gonzalez starts at point 0 and is deterministic") {
    Rng rng(67);
    const PointSet ps = testutil::random_points(15, 2, rng);
    const DistanceMatrix dm = DistanceMatrix::from_points(ps);
    const HardClustering a = gonzalez_kcenter(dm, 4);
    const HardClustering b = gonzalez_kcenter(dm, 4);
    CHECK(a.centers == b.centers);
    CHECK(std::find(a.centers.begin(), a.centers.end(), 0) != a.centers.end());
}

}  // TEST_SUITE
