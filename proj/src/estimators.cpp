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

#include "psense/estimators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "psense/core.hpp"

namespace psense {

std::size_t EstimatorSpec::trim_level(std::size_t count) const {
    switch (kind) {
        case Kind::Mean:
            return 0;
        case Kind::Trimmed:
            return level;
        case Kind::Median:
            return count < 2 ? 0 : trim_level_for_median(count);
    }
    return 0;
}

void EstimatorSpec::check_applicable(std::size_t count) const {
    if (count == 0) throw InvalidInput("estimator applied to an empty report list");
    if (kind == Kind::Trimmed && count < 2 * level + 1) {
        throw InvalidInput("trimmed estimator with level " + std::to_string(level) +
                           " needs at least " + std::to_string(2 * level + 1) +
                           " reports, got m = " + std::to_string(count));
    }
}

std::string EstimatorSpec::to_string() const {
    switch (kind) {
        case Kind::Mean:
            return "mean";
        case Kind::Trimmed:
            return "trimmed:" + std::to_string(level);
        case Kind::Median:
            return "median";
    }
    return {};
}

EstimatorSpec parse_estimator(std::string_view text) {
    if (text == "mean") return EstimatorSpec::mean();
    if (text == "median") return EstimatorSpec::median();
    constexpr std::string_view prefix = "trimmed:";
    if (text.starts_with(prefix)) {
        auto digits = text.substr(prefix.size());
        std::size_t level = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), level);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
            return EstimatorSpec::trimmed(level);
        }
    }
    throw InvalidInput("unknown estimator '" + std::string(text) +
                       "', expected mean, trimmed:<level> or median");
}

std::vector<double> sorted_reports(std::span<const double> reports) {
    std::vector<double> sorted(reports.begin(), reports.end());
    if (std::any_of(sorted.begin(), sorted.end(), [](double v) { return std::isnan(v); })) {
        throw InvalidInput("reports must not contain NaN");
    }
    std::stable_sort(sorted.begin(), sorted.end());
    return sorted;
}

double mean_of_sorted(std::span<const double> sorted) {
    const auto count = static_cast<double>(sorted.size());
    const bool finite = std::isfinite(sorted.front()) && std::isfinite(sorted.back());
    if (!finite) {
        double sum = 0.0;
        for (double v : sorted) sum += v;
        return sum / count;
    }
    const double pivot = sorted.front();
    double offset = 0.0;
    for (double v : sorted) offset += v - pivot;
    return pivot + offset / count;
}

double mean_estimate(std::span<const double> reports) {
    EstimatorSpec::mean().check_applicable(reports.size());
    return mean_of_sorted(sorted_reports(reports));
}

double trimmed_estimate(std::span<const double> reports, std::size_t level) {
    EstimatorSpec::trimmed(level).check_applicable(reports.size());
    const auto sorted = sorted_reports(reports);
    return mean_of_sorted(std::span(sorted).subspan(level, sorted.size() - 2 * level));
}

double median_estimate(std::span<const double> reports) {
    EstimatorSpec::median().check_applicable(reports.size());
    const auto sorted = sorted_reports(reports);
    const std::size_t level = EstimatorSpec::median().trim_level(reports.size());
    return mean_of_sorted(std::span(sorted).subspan(level, sorted.size() - 2 * level));
}

std::size_t trim_level_for_median(std::size_t count) {
    if (count < 2) {
        throw InvalidInput("median trim level needs at least 2 reports, got " +
                           std::to_string(count));
    }
    return count % 2 == 0 ? (count - 2) / 2 : (count - 1) / 2;
}

double estimate(const EstimatorSpec& spec, std::span<const double> reports) {
    switch (spec.kind) {
        case EstimatorSpec::Kind::Mean:
            return mean_estimate(reports);
        case EstimatorSpec::Kind::Trimmed:
            return trimmed_estimate(reports, spec.level);
        case EstimatorSpec::Kind::Median:
            return median_estimate(reports);
    }
    return 0.0;
}

}  // namespace psense
