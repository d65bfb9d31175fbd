#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "stepchev/interval.hpp"

namespace testsupport {

inline std::mt19937& rng(std::uint32_t seed = 20240817u) {
    static std::mt19937 gen(seed);
    return gen;
}

inline double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng());
}

inline int uniform_int(int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(rng());
}

// Random disjoint system of `s` segments inside [-1, 1] with gaps >= min_gap.
inline stepchev::IntervalSystem random_system(int s, double min_gap = 0.05) {
    std::vector<stepchev::Interval> parts;
    double cursor = -1.0;
    const double budget = 2.0 - s * min_gap;
    for (int i = 0; i < s; ++i) {
        const double len = uniform(0.01, budget / (2.0 * s));
        const double slack = uniform(0.0, budget / (2.0 * s));
        const double lo = cursor + (i == 0 ? 0.0 : min_gap + slack);
        parts.emplace_back(lo, lo + len);
        cursor = lo + len;
    }
    return stepchev::IntervalSystem(std::move(parts));
}

inline std::vector<double> random_values(int s, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(s);
    for (double& x : v) x = uniform(lo, hi);
    return v;
}

// Exact binomial coefficients through n = 64 (they fit in uint64).
inline std::vector<std::vector<std::uint64_t>> pascal_triangle(int n_max) {
    std::vector<std::vector<std::uint64_t>> c(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        c[n].resize(n + 1, 1);
        for (int k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
    }
    return c;
}

// Reference binomial tail by direct summation over exact coefficients.
inline double reference_lower_tail(int n, double x, int k) {
    static const auto pascal = pascal_triangle(64);
    double sum = 0.0;
    for (int m = 0; m <= k && m <= n; ++m)
        sum += static_cast<double>(pascal[n][m]) * std::pow(x, m) * std::pow(1.0 - x, n - m);
    return sum;
}

inline double reference_upper_tail(int n, double x, int k) {
    static const auto pascal = pascal_triangle(64);
    double sum = 0.0;
    for (int m = std::max(k, 0); m <= n; ++m)
        sum += static_cast<double>(pascal[n][m]) * std::pow(x, m) * std::pow(1.0 - x, n - m);
    return sum;
}

} // namespace testsupport
