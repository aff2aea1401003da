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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psense/estimators.hpp"
#include "psense/game.hpp"

namespace psense {

/// Variances of the state, the private biases and the measurement noise.
struct WorldVariances {
    double x = 1.0;
    double theta = 1.0;
    double w = 0.1;
};

struct CurvePoint {
    std::size_t n = 0;
    EstimatorSpec estimator;
    CostEstimate error;
    std::uint64_t seed = 0;
};

/// Parses "11,21,31" and arithmetic shorthand such as "11,21,...,101"
/// (step taken from the two values before the ellipsis).
std::vector<std::size_t> parse_n_list(std::string_view text);

/// Every sensor reports z + theta; the mean and the median are scored on
/// the same reports. One Mean and one Median point per n.
std::vector<CurvePoint> figure1_experiment(std::span<const std::size_t> n_list,
                                           std::size_t samples, std::uint64_t seed,
                                           const WorldVariances& variances = {});

/// Median error at the z + theta equilibrium for strictly increasing odd n.
std::vector<CurvePoint> consistency_experiment(std::span<const std::size_t> n_list,
                                               std::size_t samples, std::uint64_t seed,
                                               const WorldVariances& variances = {});

/// Ascending n, Mean before Median, then trim level.
void sort_curve_points(std::vector<CurvePoint>& points);

/// CSV with header n,estimator,error_mean,error_ci_half_width,samples,seed.
/// Reals are written with 17 significant digits.
std::string curves_csv(std::vector<CurvePoint> points);
void write_curves_csv(const std::vector<CurvePoint>& points, const std::filesystem::path& path);

/// Error against n, one polyline per estimator: median blue, mean red.
std::string curves_svg(std::vector<CurvePoint> points);
void render_curves_svg(const std::vector<CurvePoint>& points, const std::filesystem::path& path);

}  // namespace psense
