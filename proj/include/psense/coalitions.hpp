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
#include <vector>

#include "psense/core.hpp"
#include "psense/estimators.hpp"
#include "psense/game.hpp"

namespace psense {

/// A scenario whose entities may each control several report slots.
/// The receiver only ever sees total_reports anonymous messages.
struct CoalitionScenario {
    ScenarioConfig base;
    std::size_t total_reports = 0;

    static CoalitionScenario from(const ScenarioConfig& config);
};

/// Every coalition is outweighed by the rest: sum_{j != i} c_j >= c_i + 1.
bool power_balance_holds(std::span<const std::size_t> sizes);

/// No coalition holds a majority: min_i (sum_{j != i} c_j - c_i) is at
/// least 1 when the total is odd and at least 2 when it is even.
bool median_majority_condition(std::span<const std::size_t> sizes);

/// Throws InvalidInput unless the estimator is a trimmed mean with
/// max_i c_i <= level <= floor((c - 1) / 2), or the median with
/// median_majority_condition satisfied.
void require_coalition_robust(const CoalitionScenario& scenario, const EstimatorSpec& estimator);

/// Every tuple in the Cartesian power values^slots, in lexicographic order.
std::vector<std::vector<double>> adversarial_tuples(std::span<const double> values,
                                                    std::size_t slots);

/// 0, +-1, +-1e6, +-infinity.
std::vector<double> coalition_probe_values();

/// Puts each tuple on the deviator's slots, all other slots at the probe
/// state x, and requires the estimate to equal x exactly. No precondition:
/// majority coalitions produce a witness here.
ExactCheckReport coalition_deviation_scan(const CoalitionScenario& scenario,
                                          const EstimatorSpec& estimator, std::size_t deviator,
                                          std::span<const std::vector<double>> tuples);

/// coalition_deviation_scan guarded by require_coalition_robust and the
/// noiseless regime.
ExactCheckReport coalition_invariance_check(const CoalitionScenario& scenario,
                                            const EstimatorSpec& estimator, std::size_t deviator,
                                            std::span<const std::vector<double>> tuples);

/// All size vectors with `entities` entries in 1..max_size, lexicographic.
std::vector<std::vector<std::size_t>> enumerate_size_vectors(std::size_t entities,
                                                             std::size_t max_size);

}  // namespace psense
