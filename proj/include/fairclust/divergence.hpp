#pragma once

#include <functional>
#include <vector>

namespace fairclust {

using Distribution = std::vector<double>;

// The assignment programs linearize total variation only; other divergences
// are measurable here but not optimizable there.
enum class DivergenceKind { TotalVariation, KullbackLeibler };

// Convex generator for an f-divergence. `f` must be finite on (0, inf) with
// f(1) = 0; `f0` is the limit of f at 0+ and `slope_at_inf` is
// lim_{t->inf} f(t)/t (may be +inf, as for the KL generator).
struct DivergenceGenerator {
    std::function<double(double)> f;
    double f0;
    double slope_at_inf;
};

DivergenceGenerator tv_generator();
DivergenceGenerator kl_generator();

// Throws unless every entry is in [0,1] and the entries sum to 1 within tol.
void check_distribution(const Distribution& p, double tol = 1e-8);

// sum_x f(P(x)/Q(x)) Q(x) with the conventions 0*f(0/0) = 0 and, for
// Q(x) = 0 < P(x), a contribution of P(x) * slope_at_inf.
double f_divergence(const Distribution& p, const Distribution& q,
                    const DivergenceGenerator& gen);

// 0.5 * sum_x |P(x) - Q(x)|.
double tv_distance(const Distribution& p, const Distribution& q);

// sum_x P(x) log(P(x)/Q(x)); +inf when P puts mass where Q has none.
double kl_divergence(const Distribution& p, const Distribution& q);

}  // namespace fairclust
