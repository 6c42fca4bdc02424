#pragma once

// Independent reference computations for the test suites. Everything here
// deliberately avoids the library's enumerate/integrate code paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "tslog/time_scale.hpp"

namespace oracle {

// Harmonic number H_n = 1 + 1/2 + ... + 1/n, summed small-to-large in
// extended precision.
inline double harmonic(std::int64_t n) {
    long double s = 0.0L;
    for (std::int64_t k = n; k >= 1; --k) s += 1.0L / static_cast<long double>(k);
    return static_cast<double>(s);
}

// Points of a purely scattered scale, read straight off the components.
inline std::vector<double> scattered_points(const tslog::TimeScale& T) {
    std::vector<double> pts;
    for (const auto& c : T.components()) pts.push_back(c.lo);
    return pts;
}

// Brute-force delta integral on a purely scattered scale:
// sum of f(t_i) * (t_{i+1} - t_i) over points in [a, b), accumulated
// right-to-left so the summation order differs from the implementation.
inline double scattered_integral(const std::function<double(double)>& f,
                                 const std::vector<double>& pts, double a, double b) {
    if (a > b) return -scattered_integral(f, pts, b, a);
    double s = 0.0;
    for (std::size_t i = pts.size(); i-- > 1;) {
        if (pts[i - 1] >= a && pts[i] <= b) s += f(pts[i - 1]) * (pts[i] - pts[i - 1]);
    }
    return s;
}

// Random purely scattered scale with rational points k/den in [lo_num, hi_num]/den,
// always containing 1. Gaps are at least 1/den, far above the membership eps.
inline tslog::TimeScale random_rational_scale(std::mt19937& rng, int max_points = 24) {
    std::uniform_int_distribution<int> den_d(1, 10);
    int den = den_d(rng);
    std::uniform_int_distribution<int> count_d(3, max_points);
    int count = count_d(rng);
    std::uniform_int_distribution<int> num_d(1, 8 * den);
    std::vector<int> nums{den}; // the point 1
    for (int i = 0; i < count; ++i) nums.push_back(num_d(rng));
    std::sort(nums.begin(), nums.end());
    nums.erase(std::unique(nums.begin(), nums.end()), nums.end());
    std::vector<tslog::Component> comps;
    for (int n : nums) {
        double p = static_cast<double>(n) / den;
        comps.push_back({p, p});
    }
    return tslog::TimeScale(comps);
}

} // namespace oracle
