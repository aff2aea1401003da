/*
   Copyright 2026 The psense Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Reference values computed without touching the library: closed forms
// and numerical quadrature over order-statistic densities.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace psense::oracle {

/// E|N(0, variance)|.
inline double expected_abs_normal(double variance) {
    return std::sqrt(variance) * std::sqrt(2.0 / std::numbers::pi);
}

/// E|mean of n iid N(0, variance)|.
inline double expected_abs_sample_mean(std::size_t n, double variance) {
    return expected_abs_normal(variance / static_cast<double>(n));
}

/// E|median of n iid N(0, variance)| for odd n, by composite Simpson
/// quadrature of |t| times the density of the ((n+1)/2)-th order statistic.
inline double expected_abs_sample_median(std::size_t n, double variance) {
    const double sd = std::sqrt(variance);
    const std::size_t k = (n + 1) / 2;
    // log of n * C(n-1, k-1)
    const double log_coef = std::log(static_cast<double>(n)) + std::lgamma(static_cast<double>(n)) -
                            std::lgamma(static_cast<double>(k)) -
                            std::lgamma(static_cast<double>(n - k + 1));
    auto density = [&](double t) {
        const double u = t / sd;
        const double cdf = 0.5 * std::erfc(-u / std::numbers::sqrt2);
        const double sf = 0.5 * std::erfc(u / std::numbers::sqrt2);
        if (cdf <= 0.0 || sf <= 0.0) return 0.0;
        const double log_pdf = -0.5 * u * u - 0.5 * std::log(2.0 * std::numbers::pi) - std::log(sd);
        return std::exp(log_coef + (k - 1) * std::log(cdf) + (n - k) * std::log(sf) + log_pdf);
    };
    const std::size_t intervals = 200000;
    const double hi = 12.0 * sd;
    const double h = hi / intervals;
    double sum = 0.0;
    for (std::size_t i = 0; i <= intervals; ++i) {
        const double t = i * h;
        const double weight = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        sum += weight * t * density(t);
    }
    // the integrand is even
    return 2.0 * sum * h / 3.0;
}

/// Trimmed mean by the textbook definition: full sort, drop, plain sum.
inline double brute_trimmed_mean(std::vector<double> values, std::size_t level) {
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (std::size_t i = level; i + level < values.size(); ++i) sum += values[i];
    return sum / static_cast<double>(values.size() - 2 * level);
}

/// Median by the textbook definition.
inline double brute_median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size();
    return m % 2 == 1 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

}  // namespace psense::oracle
