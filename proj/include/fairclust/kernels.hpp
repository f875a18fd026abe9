#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace fairclust::kernels {

// Caps the worker count for the parallel kernels. 0 restores the runtime
// default; 1 forces the serial reference path.
void set_max_threads(int t);
int max_threads();

// True when the library was compiled with OpenMP support.
bool parallel_available();

// Flat row-major n*n Euclidean distance matrix.
std::vector<double> pairwise_distances(const std::vector<std::vector<double>>& pts);
std::vector<double> pairwise_distances_serial(const std::vector<std::vector<double>>& pts);
std::vector<double> pairwise_distances_parallel(const std::vector<std::vector<double>>& pts);

// Nearest-centroid index per point, ties broken toward the lower index.
std::vector<int> assign_nearest(const std::vector<std::vector<double>>& pts,
                                const std::vector<std::vector<double>>& centroids);
std::vector<int> assign_nearest_serial(const std::vector<std::vector<double>>& pts,
                                       const std::vector<std::vector<double>>& centroids);
std::vector<int> assign_nearest_parallel(const std::vector<std::vector<double>>& pts,
                                         const std::vector<std::vector<double>>& centroids);

// One pivot step on a dense row-major tableau: divides the pivot row by the
// pivot element, then eliminates the pivot column from every other row. Each
// row is written by exactly one worker, so the parallel path is bitwise
// identical to the serial one.
void pivot_eliminate(double* tab, std::size_t rows, std::size_t cols,
                     std::size_t pr, std::size_t pc);
void pivot_eliminate_serial(double* tab, std::size_t rows, std::size_t cols,
                            std::size_t pr, std::size_t pc);
void pivot_eliminate_parallel(double* tab, std::size_t rows, std::size_t cols,
                              std::size_t pr, std::size_t pc);

// Total-variation gaps for a list of row pairs over a flat n*k probability
// matrix. out[i] = 0.5 * sum_c |mu[a_i][c] - mu[b_i][c]|.
std::vector<double> tv_gaps(const double* mu, std::size_t k,
                            const std::vector<std::pair<int, int>>& pairs);
std::vector<double> tv_gaps_serial(const double* mu, std::size_t k,
                                   const std::vector<std::pair<int, int>>& pairs);
std::vector<double> tv_gaps_parallel(const double* mu, std::size_t k,
                                     const std::vector<std::pair<int, int>>& pairs);

}  // namespace fairclust::kernels
