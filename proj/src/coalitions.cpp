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

#include "psense/coalitions.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace psense {
namespace {

std::size_t total(std::span<const std::size_t> sizes) {
    return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
}

}  // namespace

CoalitionScenario CoalitionScenario::from(const ScenarioConfig& config) {
    config.validate();
    return {config, config.total_reports()};
}

bool power_balance_holds(std::span<const std::size_t> sizes) {
    const std::size_t c = total(sizes);
    return std::all_of(sizes.begin(), sizes.end(),
                       [c](std::size_t ci) { return c - ci >= ci + 1; });
}

bool median_majority_condition(std::span<const std::size_t> sizes) {
    const std::size_t c = total(sizes);
    const long long threshold = c % 2 == 1 ? 1 : 2;
    return std::all_of(sizes.begin(), sizes.end(), [&](std::size_t ci) {
        const long long margin = static_cast<long long>(c - ci) - static_cast<long long>(ci);
        return margin >= threshold;
    });
}

void require_coalition_robust(const CoalitionScenario& scenario,
                              const EstimatorSpec& estimator) {
    const auto& sizes = scenario.base.coalition_sizes;
    const std::size_t c = scenario.total_reports;
    if (c != total(sizes)) {
        throw InvalidInput("total_reports " + std::to_string(c) +
                           " disagrees with the coalition sizes");
    }
    switch (estimator.kind) {
        case EstimatorSpec::Kind::Mean:
            throw InvalidInput("the coalition check does not apply to the mean");
        case EstimatorSpec::Kind::Trimmed: {
            const std::size_t largest = *std::max_element(sizes.begin(), sizes.end());
            if (estimator.level < largest || estimator.level > (c - 1) / 2) {
                throw InvalidInput("trim level " + std::to_string(estimator.level) +
                                   " outside [" + std::to_string(largest) + ", " +
                                   std::to_string((c - 1) / 2) + "] for these coalitions");
            }
            break;
        }
        case EstimatorSpec::Kind::Median:
            if (!median_majority_condition(sizes)) {
                throw InvalidInput("a coalition holds a majority of the reports");
            }
            break;
    }
}

std::vector<std::vector<double>> adversarial_tuples(std::span<const double> values,
                                                    std::size_t slots) {
    std::vector<std::vector<double>> tuples;
    if (values.empty()) return tuples;
    std::vector<std::size_t> digits(slots, 0);
    while (true) {
        std::vector<double> tuple(slots);
        for (std::size_t j = 0; j < slots; ++j) tuple[j] = values[digits[j]];
        tuples.push_back(std::move(tuple));
        std::size_t pos = slots;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < values.size()) break;
            digits[pos] = 0;
            if (pos == 0) return tuples;
        }
        if (slots == 0) return tuples;
    }
}

std::vector<double> coalition_probe_values() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {0.0, 1.0, -1.0, 1e6, -1e6, inf, -inf};
}

ExactCheckReport coalition_deviation_scan(const CoalitionScenario& scenario,
                                          const EstimatorSpec& estimator, std::size_t deviator,
                                          std::span<const std::vector<double>> tuples) {
    const auto& config = scenario.base;
    const std::size_t first = config.first_slot(deviator);
    const std::size_t slots = config.coalition_sizes[deviator];
    estimator.check_applicable(scenario.total_reports);
    std::vector<double> y(scenario.total_reports);
    for (const auto& tuple : tuples) {
        if (tuple.size() != slots) {
            throw InvalidInput("adversarial tuple has " + std::to_string(tuple.size()) +
                               " values, the deviator controls " + std::to_string(slots));
        }
        for (double x : probe_states()) {
            std::fill(y.begin(), y.end(), x);
            std::copy(tuple.begin(), tuple.end(), y.begin() + first);
            const double est = estimate(estimator, y);
            if (est != x) return {false, Witness{x, y, est}};
        }
    }
    return {true, std::nullopt};
}

ExactCheckReport coalition_invariance_check(const CoalitionScenario& scenario,
                                            const EstimatorSpec& estimator, std::size_t deviator,
                                            std::span<const std::vector<double>> tuples) {
    scenario.base.validate();
    if (!scenario.base.noiseless()) {
        throw InvalidInput("the coalition check requires var_w = 0");
    }
    require_coalition_robust(scenario, estimator);
    return coalition_deviation_scan(scenario, estimator, deviator, tuples);
}

std::vector<std::vector<std::size_t>> enumerate_size_vectors(std::size_t entities,
                                                             std::size_t max_size) {
    std::vector<std::vector<std::size_t>> out;
    if (entities == 0 || max_size == 0) return out;
    std::vector<std::size_t> sizes(entities, 1);
    while (true) {
        out.push_back(sizes);
        std::size_t pos = entities;
        while (pos > 0) {
            --pos;
            if (++sizes[pos] <= max_size) break;
            sizes[pos] = 1;
            if (pos == 0) return out;
        }
    }
}

}  // namespace psense
