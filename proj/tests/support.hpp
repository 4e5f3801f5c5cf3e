#pragma once

// Hand-rolled generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "latlaw/series.hpp"

namespace support {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    unsigned integer(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(engine_); }

    /// Coefficients uniform in [lo, hi].
    latlaw::TruncatedSeries series(std::size_t order, double lo = -1.0, double hi = 1.0) {
        std::vector<double> c(order + 1);
        for (auto& x : c) x = uniform(lo, hi);
        return latlaw::TruncatedSeries(std::move(c));
    }

    /// A probability vector of length order + 1 with leftover mass > 0.
    latlaw::TruncatedSeries pmf(std::size_t order) {
        std::vector<double> c(order + 1);
        double total = 0.0;
        for (auto& x : c) total += (x = uniform(0.0, 1.0));
        const double keep = uniform(0.5, 1.0);
        for (auto& x : c) x *= keep / total;
        return latlaw::TruncatedSeries(std::move(c));
    }

private:
    std::mt19937_64 engine_;
};

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace support
