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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace psense {

/// The receiver's aggregation rule.
struct EstimatorSpec {
    enum class Kind { Mean, Trimmed, Median };

    Kind kind = Kind::Mean;
    std::size_t level = 0;  // only meaningful for Trimmed

    static EstimatorSpec mean() { return {Kind::Mean, 0}; }
    static EstimatorSpec trimmed(std::size_t level) { return {Kind::Trimmed, level}; }
    static EstimatorSpec median() { return {Kind::Median, 0}; }

    /// Number of reports discarded from each end when applied to `count`
    /// reports. Mean trims nothing; Median trims down to the middle one or two.
    std::size_t trim_level(std::size_t count) const;

    /// Throws InvalidInput if the rule cannot be applied to `count` reports.
    void check_applicable(std::size_t count) const;

    /// "mean", "trimmed:<l>" or "median".
    std::string to_string() const;

    friend bool operator==(const EstimatorSpec&, const EstimatorSpec&) = default;
};

/// Parses the textual form produced by EstimatorSpec::to_string.
EstimatorSpec parse_estimator(std::string_view text);

/// Ascending stable sort; rejects NaN. Infinities sort to the ends.
std::vector<double> sorted_reports(std::span<const double> reports);

/// Mean of an ascending range, accumulated in ascending order relative to
/// its smallest element. A run of equal values therefore averages to that
/// value exactly.
double mean_of_sorted(std::span<const double> sorted);

double mean_estimate(std::span<const double> reports);

/// Averages what remains after dropping the `level` smallest and `level`
/// largest reports. Requires reports.size() >= 2 * level + 1.
double trimmed_estimate(std::span<const double> reports, std::size_t level);

double median_estimate(std::span<const double> reports);

/// Trim level at which the trimmed estimate coincides with the median:
/// (count - 2) / 2 for even counts, (count - 1) / 2 for odd ones.
std::size_t trim_level_for_median(std::size_t count);

/// Dispatches on spec.kind.
double estimate(const EstimatorSpec& spec, std::span<const double> reports);

}  // namespace psense
