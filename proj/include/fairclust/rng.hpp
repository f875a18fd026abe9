#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace fairclust {

// Deterministic RNG used everywhere randomness is needed. Draws are mapped
// to doubles by hand so results do not depend on the standard library's
// distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1).
    double unit() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform index in [0, n).
    std::size_t index(std::size_t n) {
        if (n == 0) throw std::invalid_argument("index over empty range");
        auto i = static_cast<std::size_t>(unit() * static_cast<double>(n));
        return i >= n ? n - 1 : i;
    }

    // Uniform in [lo, hi).
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Index sampled proportionally to the nonnegative weights; uniform when
    // all weights vanish.
    std::size_t weighted(const std::vector<double>& w) {
        double total = 0.0;
        for (double v : w) total += v;
        if (total <= 0.0) return index(w.size());
        double r = unit() * total;
        for (std::size_t i = 0; i < w.size(); ++i) {
            r -= w[i];
            if (r < 0.0) return i;
        }
        return w.size() - 1;
    }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace fairclust
