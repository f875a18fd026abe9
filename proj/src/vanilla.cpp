#include "fairclust/vanilla.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fairclust/kernels.hpp"
#include "fairclust/rng.hpp"

namespace fairclust {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        const double diff = a[t] - b[t];
        s += diff * diff;
    }
    return s;
}

std::vector<int> assign_by_ids(const DistanceMatrix& dm,
                               const std::vector<int>& centers) {
    std::vector<int> assign(dm.size());
    for (std::size_t j = 0; j < dm.size(); ++j) {
        int best = centers[0];
        double best_d = dm(j, static_cast<std::size_t>(centers[0]));
        for (std::size_t t = 1; t < centers.size(); ++t) {
            const double d = dm(j, static_cast<std::size_t>(centers[t]));
            if (d < best_d || (d == best_d && centers[t] < best)) {
                best_d = d;
                best = centers[t];
            }
        }
        assign[j] = best;
    }
    return assign;
}

}  // namespace

LloydResult lloyd_kmeans(const PointSet& ps, std::size_t k, std::uint64_t seed,
                         std::size_t max_iters) {
    const std::size_t n = ps.size();
    if (k == 0 || k > n) throw std::invalid_argument("need 1 <= k <= n");

    Rng rng(seed);
    std::vector<std::vector<double>> centroids;
    centroids.push_back(ps[rng.index(n)]);
    std::vector<double> d2(n);
    while (centroids.size() < k) {
        for (std::size_t j = 0; j < n; ++j) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) best = std::min(best, sq_dist(ps[j], c));
            d2[j] = best;
        }
        centroids.push_back(ps[rng.weighted(d2)]);
    }

    LloydResult res;
    std::vector<int> assign;
    for (std::size_t it = 0; it < max_iters; ++it) {
        std::vector<int> next = kernels::assign_nearest(ps.points(), centroids);
        double sse = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            sse += sq_dist(ps[j], centroids[static_cast<std::size_t>(next[j])]);
        res.sse.push_back(sse);
        res.iterations = it + 1;
        if (next == assign) break;
        assign = std::move(next);

        const std::size_t d = ps.dim();
        std::vector<std::vector<double>> sums(k, std::vector<double>(d, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t j = 0; j < n; ++j) {
            const auto c = static_cast<std::size_t>(assign[j]);
            for (std::size_t t = 0; t < d; ++t) sums[c][t] += ps[j][t];
            ++counts[c];
        }
        std::vector<bool> reseeded(n, false);
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                for (std::size_t t = 0; t < d; ++t) centroids[c][t] = sums[c][t] / counts[c];
                continue;
            }
            // Reseed an empty cluster to the point currently worst served;
            // dropping an unused centroid and adding a data point can only
            // lower every point's nearest-centroid distance.
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (reseeded[j]) continue;
                const double dj = sq_dist(ps[j], centroids[static_cast<std::size_t>(assign[j])]);
                if (dj > far_d) {
                    far_d = dj;
                    far = j;
                }
            }
            centroids[c] = ps[far];
            reseeded[far] = true;
        }
    }

    std::vector<int> ids;
    for (const auto& c : centroids) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            const double dj = sq_dist(ps[j], c);
            if (dj < best_d) {
                best_d = dj;
                best = j;
            }
        }
        const int id = static_cast<int>(best);
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());

    res.clustering.centers = ids;
    res.clustering.assign.assign(n, ids[0]);
    for (std::size_t j = 0; j < n; ++j) {
        double best_d = std::numeric_limits<double>::infinity();
        for (int id : ids) {
            const double dj = sq_dist(ps[j], ps[static_cast<std::size_t>(id)]);
            if (dj < best_d) {
                best_d = dj;
                res.clustering.assign[j] = id;
            }
        }
    }
    return res;
}

namespace {

double sum_cost(const DistanceMatrix& dm, const std::vector<int>& centers,
                double power) {
    double total = 0.0;
    for (std::size_t j = 0; j < dm.size(); ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (int c : centers) best = std::min(best, dm(j, static_cast<std::size_t>(c)));
        total += power == 1.0 ? best : std::pow(best, power);
    }
    return total;
}

}  // namespace

HardClustering local_search_kmedian(const DistanceMatrix& dm, std::size_t k,
                                    double power) {
    const std::size_t n = dm.size();
    if (k == 0 || k > n) throw std::invalid_argument("need 1 <= k <= n");

    std::vector<int> centers;
    std::vector<bool> in(n, false);
    while (centers.size() < k) {
        int best = -1;
        double best_cost = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n; ++c) {
            if (in[c]) continue;
            centers.push_back(static_cast<int>(c));
            const double cost = sum_cost(dm, centers, power);
            centers.pop_back();
            if (cost < best_cost) {
                best_cost = cost;
                best = static_cast<int>(c);
            }
        }
        centers.push_back(best);
        in[static_cast<std::size_t>(best)] = true;
    }

    double cur = sum_cost(dm, centers, power);
    for (;;) {
        int best_out = -1, best_in = -1;
        double best_cost = cur - 1e-12;
        for (std::size_t oi = 0; oi < centers.size(); ++oi) {
            const int saved = centers[oi];
            for (std::size_t c = 0; c < n; ++c) {
                if (in[c]) continue;
                centers[oi] = static_cast<int>(c);
                const double cost = sum_cost(dm, centers, power);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_out = static_cast<int>(oi);
                    best_in = static_cast<int>(c);
                }
            }
            centers[oi] = saved;
        }
        if (best_out < 0) break;
        in[static_cast<std::size_t>(centers[static_cast<std::size_t>(best_out)])] = false;
        in[static_cast<std::size_t>(best_in)] = true;
        centers[static_cast<std::size_t>(best_out)] = best_in;
        cur = best_cost;
    }

    std::sort(centers.begin(), centers.end());
    HardClustering hc;
    hc.centers = centers;
    hc.assign = assign_by_ids(dm, centers);
    return hc;
}

HardClustering gonzalez_kcenter(const DistanceMatrix& dm, std::size_t k) {
    const std::size_t n = dm.size();
    if (k == 0 || k > n) throw std::invalid_argument("need 1 <= k <= n");

    std::vector<int> centers{0};
    std::vector<double> dist(n);
    for (std::size_t j = 0; j < n; ++j) dist[j] = dm(j, 0);
    while (centers.size() < k) {
        std::size_t far = 0;
        for (std::size_t j = 1; j < n; ++j)
            if (dist[j] > dist[far]) far = j;
        centers.push_back(static_cast<int>(far));
        for (std::size_t j = 0; j < n; ++j)
            dist[j] = std::min(dist[j], dm(j, far));
    }

    std::sort(centers.begin(), centers.end());
    HardClustering hc;
    hc.centers = centers;
    hc.assign = assign_by_ids(dm, centers);
    return hc;
}

}  // namespace fairclust
