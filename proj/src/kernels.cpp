#include "fairclust/kernels.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fairclust::kernels {

namespace {

std::atomic<int> g_max_threads{0};

bool use_parallel() {
#ifdef _OPENMP
    return g_max_threads.load() != 1;
#else
    return false;
#endif
}

#ifdef _OPENMP
int worker_count() {
    const int cap = g_max_threads.load();
    const int hw = omp_get_max_threads();
    return (cap <= 0) ? hw : std::min(cap, hw);
}
#endif

}  // namespace

void set_max_threads(int t) {
    if (t < 0) throw std::invalid_argument("thread cap must be >= 0");
    g_max_threads.store(t);
}

int max_threads() { return g_max_threads.load(); }

bool parallel_available() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

std::vector<double> pairwise_distances_serial(
    const std::vector<std::vector<double>>& pts) {
    const std::size_t n = pts.size();
    const std::size_t d = pts.empty() ? 0 : pts[0].size();
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < d; ++t) {
                const double diff = pts[i][t] - pts[j][t];
                s += diff * diff;
            }
            const double dist = std::sqrt(s);
            out[i * n + j] = dist;
            out[j * n + i] = dist;
        }
    }
    return out;
}

std::vector<double> pairwise_distances_parallel(
    const std::vector<std::vector<double>>& pts) {
#ifdef _OPENMP
    const std::size_t n = pts.size();
    const std::size_t d = pts.empty() ? 0 : pts[0].size();
    std::vector<double> out(n * n, 0.0);
    // Each iteration writes row i above the diagonal; the mirror writes are
    // filled in a second serial sweep to keep writes disjoint.
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < d; ++t) {
                const double diff = pts[static_cast<std::size_t>(i)][t] - pts[j][t];
                s += diff * diff;
            }
            out[static_cast<std::size_t>(i) * n + j] = std::sqrt(s);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out[j * n + i] = out[i * n + j];
    return out;
#else
    return pairwise_distances_serial(pts);
#endif
}

std::vector<double> pairwise_distances(const std::vector<std::vector<double>>& pts) {
    return use_parallel() ? pairwise_distances_parallel(pts)
                          : pairwise_distances_serial(pts);
}

namespace {

int nearest_of(const std::vector<double>& p,
               const std::vector<std::vector<double>>& centroids) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        double s = 0.0;
        for (std::size_t t = 0; t < p.size(); ++t) {
            const double diff = p[t] - centroids[c][t];
            s += diff * diff;
        }
        if (s < best_d) {
            best_d = s;
            best = static_cast<int>(c);
        }
    }
    return best;
}

}  // namespace

std::vector<int> assign_nearest_serial(
    const std::vector<std::vector<double>>& pts,
    const std::vector<std::vector<double>>& centroids) {
    std::vector<int> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = nearest_of(pts[i], centroids);
    return out;
}

std::vector<int> assign_nearest_parallel(
    const std::vector<std::vector<double>>& pts,
    const std::vector<std::vector<double>>& centroids) {
#ifdef _OPENMP
    std::vector<int> out(pts.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pts.size()); ++i)
        out[static_cast<std::size_t>(i)] =
            nearest_of(pts[static_cast<std::size_t>(i)], centroids);
    return out;
#else
    return assign_nearest_serial(pts, centroids);
#endif
}

std::vector<int> assign_nearest(const std::vector<std::vector<double>>& pts,
                                const std::vector<std::vector<double>>& centroids) {
    return use_parallel() ? assign_nearest_parallel(pts, centroids)
                          : assign_nearest_serial(pts, centroids);
}

void pivot_eliminate_serial(double* tab, std::size_t rows, std::size_t cols,
                            std::size_t pr, std::size_t pc) {
    double* prow = tab + pr * cols;
    const double piv = prow[pc];
    for (std::size_t c = 0; c < cols; ++c) prow[c] /= piv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (r == pr) continue;
        double* row = tab + r * cols;
        const double factor = row[pc];
        if (factor == 0.0) continue;
        for (std::size_t c = 0; c < cols; ++c) row[c] -= factor * prow[c];
        row[pc] = 0.0;
    }
}

void pivot_eliminate_parallel(double* tab, std::size_t rows, std::size_t cols,
                              std::size_t pr, std::size_t pc) {
#ifdef _OPENMP
    double* prow = tab + pr * cols;
    const double piv = prow[pc];
    for (std::size_t c = 0; c < cols; ++c) prow[c] /= piv;
    prow[pc] = 1.0;
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
        if (static_cast<std::size_t>(r) == pr) continue;
        double* row = tab + static_cast<std::size_t>(r) * cols;
        const double factor = row[pc];
        if (factor == 0.0) continue;
        for (std::size_t c = 0; c < cols; ++c) row[c] -= factor * prow[c];
        row[pc] = 0.0;
    }
#else
    pivot_eliminate_serial(tab, rows, cols, pr, pc);
#endif
}

void pivot_eliminate(double* tab, std::size_t rows, std::size_t cols,
                     std::size_t pr, std::size_t pc) {
    if (use_parallel())
        pivot_eliminate_parallel(tab, rows, cols, pr, pc);
    else
        pivot_eliminate_serial(tab, rows, cols, pr, pc);
}

std::vector<double> tv_gaps_serial(const double* mu, std::size_t k,
                                   const std::vector<std::pair<int, int>>& pairs) {
    std::vector<double> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double* a = mu + static_cast<std::size_t>(pairs[i].first) * k;
        const double* b = mu + static_cast<std::size_t>(pairs[i].second) * k;
        double s = 0.0;
        for (std::size_t c = 0; c < k; ++c) s += std::abs(a[c] - b[c]);
        out[i] = 0.5 * s;
    }
    return out;
}

std::vector<double> tv_gaps_parallel(const double* mu, std::size_t k,
                                     const std::vector<std::pair<int, int>>& pairs) {
#ifdef _OPENMP
    std::vector<double> out(pairs.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pairs.size()); ++i) {
        const auto& pr = pairs[static_cast<std::size_t>(i)];
        const double* a = mu + static_cast<std::size_t>(pr.first) * k;
        const double* b = mu + static_cast<std::size_t>(pr.second) * k;
        double s = 0.0;
        for (std::size_t c = 0; c < k; ++c) s += std::abs(a[c] - b[c]);
        out[static_cast<std::size_t>(i)] = 0.5 * s;
    }
    return out;
#else
    return tv_gaps_serial(mu, k, pairs);
#endif
}

std::vector<double> tv_gaps(const double* mu, std::size_t k,
                            const std::vector<std::pair<int, int>>& pairs) {
    return use_parallel() ? tv_gaps_parallel(mu, k, pairs)
                          : tv_gaps_serial(mu, k, pairs);
}

}  // namespace fairclust::kernels
