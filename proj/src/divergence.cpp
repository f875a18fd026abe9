#include "fairclust/divergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fairclust {

DivergenceGenerator tv_generator() {
    return {[](double t) { return 0.5 * std::abs(t - 1.0); }, 0.5, 0.5};
}

DivergenceGenerator kl_generator() {
    return {[](double t) { return t * std::log(t); }, 0.0,
            std::numeric_limits<double>::infinity()};
}

void check_distribution(const Distribution& p, double tol) {
    if (p.empty()) throw std::invalid_argument("empty distribution");
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("distribution entry outside [0,1]");
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument("distribution does not sum to 1");
}

double f_divergence(const Distribution& p, const Distribution& q,
                    const DivergenceGenerator& gen) {
    if (p.size() != q.size())
        throw std::invalid_argument("distributions have different supports");
    double total = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (q[x] == 0.0) {
            if (p[x] == 0.0) continue;
            if (std::isinf(gen.slope_at_inf))
                return std::numeric_limits<double>::infinity();
            total += p[x] * gen.slope_at_inf;
        } else if (p[x] == 0.0) {
            total += gen.f0 * q[x];
        } else {
            total += gen.f(p[x] / q[x]) * q[x];
        }
    }
    return total;
}

double tv_distance(const Distribution& p, const Distribution& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("distributions have different supports");
    double s = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) s += std::abs(p[x] - q[x]);
    return 0.5 * s;
}

double kl_divergence(const Distribution& p, const Distribution& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("distributions have different supports");
    double total = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (p[x] == 0.0) continue;
        if (q[x] == 0.0) return std::numeric_limits<double>::infinity();
        total += p[x] * std::log(p[x] / q[x]);
    }
    return total;
}

}  // namespace fairclust
