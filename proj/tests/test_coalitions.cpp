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

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "psense/coalitions.hpp"

using namespace psense;

namespace {

CoalitionScenario scenario(std::vector<std::size_t> sizes) {
    auto config = ScenarioConfig::with_sensors(sizes.size());
    config.coalition_sizes = std::move(sizes);
    config.var_w = 0.0;
    return CoalitionScenario::from(config);
}

ExactCheckReport scan_all(const CoalitionScenario& s, const EstimatorSpec& e) {
    for (std::size_t i = 0; i < s.base.n_sensors; ++i) {
        const auto tuples = adversarial_tuples(coalition_probe_values(), s.base.coalition_sizes[i]);
        auto report = coalition_deviation_scan(s, e, i, tuples);
        if (!report.holds) return report;
    }
    return {true, std::nullopt};
}

}  // namespace

TEST_CASE("power balance and the majority condition") {
    using V = std::vector<std::size_t>;
    CHECK(power_balance_holds(V{2, 2, 1}));
    CHECK(!power_balance_holds(V{5, 1, 1}));
    CHECK(!power_balance_holds(V{1, 1}));
    CHECK(power_balance_holds(V{1, 1, 1}));
    CHECK(median_majority_condition(V{2, 2, 1}));
    CHECK(!median_majority_condition(V{3, 3}));
    CHECK(median_majority_condition(V{1, 1, 1}));
    CHECK(median_majority_condition(V{2, 2, 2}));
    CHECK(!median_majority_condition(V{2, 1, 1}));
    CHECK(!median_majority_condition(V{3, 1, 1}));
}

TEST_CASE("coalition scenario bookkeeping") {
    const auto s = scenario({2, 2, 1});
    CHECK(s.total_reports == 5);
    CHECK(s.base.first_slot(2) == 4);
    CHECK(adversarial_tuples(coalition_probe_values(), 2).size() == 49);
    CHECK(adversarial_tuples(coalition_probe_values(), 0).size() == 1);
    const auto sizes = enumerate_size_vectors(2, 3);
    CHECK(sizes.size() == 9);
    CHECK(sizes.front() == std::vector<std::size_t>{1, 1});
    CHECK(sizes.back() == std::vector<std::size_t>{3, 3});
}

TEST_CASE("coalition invariance examples") {
    const auto s = scenario({2, 2, 1});
    const auto tuples = adversarial_tuples(coalition_probe_values(), 2);
    CHECK(coalition_invariance_check(s, EstimatorSpec::trimmed(2), 0, tuples).holds);
    CHECK(coalition_invariance_check(s, EstimatorSpec::median(), 1, tuples).holds);
    CHECK_THROWS_AS(coalition_invariance_check(s, EstimatorSpec::trimmed(1), 0, tuples), InvalidInput);
    CHECK_THROWS_AS(coalition_invariance_check(s, EstimatorSpec::mean(), 0, tuples), InvalidInput);

    // the trimmed mean at too low a level lets a pair through
    const auto leak = coalition_deviation_scan(s, EstimatorSpec::trimmed(1), 0, tuples);
    REQUIRE(!leak.holds);
    CHECK(leak.witness->estimate != leak.witness->state);

    auto noisy = s;
    noisy.base.var_w = 0.1;
    CHECK_THROWS_AS(coalition_invariance_check(noisy, EstimatorSpec::median(), 0, tuples), InvalidInput);
}

TEST_CASE("a majority coalition controls the median") {
    const auto s = scenario({3, 1, 1});
    const auto tuples = adversarial_tuples(coalition_probe_values(), 3);
    CHECK_THROWS_WITH_AS(coalition_invariance_check(s, EstimatorSpec::median(), 0, tuples),
                         doctest::Contains("majority"), InvalidInput);
    const auto report = coalition_deviation_scan(s, EstimatorSpec::median(), 0, tuples);
    REQUIRE(!report.holds);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->reports.size() == 5);
    CHECK(report.witness->estimate != report.witness->state);
}

TEST_CASE("the preconditions are exactly the conditions under which the scan passes") {
    for (std::size_t entities = 2; entities <= 4; ++entities) {
        for (const auto& sizes : enumerate_size_vectors(entities, 3)) {
            const std::size_t c = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
            const std::size_t largest = *std::max_element(sizes.begin(), sizes.end());
            const auto s = scenario(sizes);
            CAPTURE(c);
            CAPTURE(largest);

            CHECK(power_balance_holds(sizes) == (2 * largest + 1 <= c));

            // the median is safe iff nobody reaches half of the reports
            // (strictly less than half when the middle is a pair)
            const bool median_safe = c % 2 == 1 ? 2 * largest < c : 2 * largest + 2 <= c;
            CHECK(median_majority_condition(sizes) == median_safe);
            CHECK(scan_all(s, EstimatorSpec::median()).holds == median_safe);

            for (std::size_t level = 0; 2 * level + 1 <= c; ++level) {
                const bool robust = level >= largest;
                CHECK(scan_all(s, EstimatorSpec::trimmed(level)).holds == robust);
                bool accepted = true;
                try {
                    require_coalition_robust(s, EstimatorSpec::trimmed(level));
                } catch (const InvalidInput&) {
                    accepted = false;
                }
                CHECK(accepted == robust);
            }
        }
    }
}

TEST_CASE("singleton coalitions reduce to the single-sensor check") {
    for (std::size_t n = 3; n <= 9; ++n) {
        auto config = ScenarioConfig::with_sensors(n);
        config.var_w = 0.0;
        const auto s = CoalitionScenario::from(config);
        const auto values = default_adversarial_values();
        for (std::size_t level = 1; level <= (n - 1) / 2; ++level) {
            const auto single = noiseless_truth_equilibrium_check(config, EstimatorSpec::trimmed(level), values);
            const auto tuples = adversarial_tuples(values, 1);
            CHECK(coalition_invariance_check(s, EstimatorSpec::trimmed(level), 0, tuples).holds ==
                  single.holds);
        }
    }
}
