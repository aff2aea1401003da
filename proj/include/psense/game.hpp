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
#include <optional>
#include <span>
#include <vector>

#include "psense/core.hpp"
#include "psense/estimators.hpp"
#include "psense/policies.hpp"

namespace psense {

/// One realized round: the world, every report slot's message, and the
/// receiver's estimate of them.
struct RoundSample {
    WorldDraw world;
    std::vector<double> reports;
    double estimate = 0.0;
};

/// Monte Carlo mean with a normal-approximation 95% half-width.
struct CostEstimate {
    double mean = 0.0;
    double half_width_95 = 0.0;
    std::size_t samples = 0;

    /// Losses are reduced serially in index order.
    static CostEstimate from_losses(std::span<const double> losses);
};

/// Serial mean/variance accumulator; CostEstimate::from_losses uses it too,
/// so both paths agree bitwise on the same losses.
class CostAccumulator {
public:
    void add(double loss);
    CostEstimate result() const;

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct DeviationReport {
    std::size_t deviator = 0;
    CostEstimate base_cost;
    SensorPolicy best_policy;
    std::size_t best_index = 0;  // position of best_policy in the grid
    CostEstimate best_cost;
    double gain = 0.0;          // base_cost.mean - best_cost.mean
    bool significant = false;   // gain > sum of both half-widths
};

/// Unilateral-deviation gain with per-replicate pairing.
struct PairedGain {
    double mean = 0.0;
    double std_error = 0.0;
    double z_score = 0.0;
    std::size_t samples = 0;
};

/// A report list, the state it was built around and the resulting
/// estimate, exhibiting estimate != state.
struct Witness {
    double state = 0.0;
    std::vector<double> reports;
    double estimate = 0.0;
};

struct ExactCheckReport {
    bool holds = true;
    std::optional<Witness> witness;  // present iff !holds
};

/// Fixed quantities for ex post costs. Either the state x or the
/// measurement of the entity's first slot is pinned, together with the
/// entity's private bias; everything else is redrawn.
struct Conditioning {
    enum class Kind { StateAndBias, MeasurementAndBias };

    Kind kind = Kind::StateAndBias;
    double value = 0.0;
    double theta = 0.0;

    static Conditioning on_state(double x, double theta) {
        return {Kind::StateAndBias, x, theta};
    }
    static Conditioning on_measurement(double z, double theta) {
        return {Kind::MeasurementAndBias, z, theta};
    }
};

/// Draws a world from `rng`, then c unit normals (one per slot, always
/// drawn, used only by jittered policies) and aggregates the reports.
RoundSample simulate_round(const ScenarioConfig& config, const PolicyProfile& profile,
                           const EstimatorSpec& estimator, RngStream& rng);

/// E|x + theta_entity - estimate| over replicate streams (seed, 0..samples-1).
CostEstimate ex_ante_cost(const ScenarioConfig& config, const PolicyProfile& profile,
                          const EstimatorSpec& estimator, std::size_t entity,
                          std::size_t samples);

/// E|x - estimate| over replicate streams (seed, 0..samples-1).
CostEstimate estimator_error(const ScenarioConfig& config, const PolicyProfile& profile,
                             const EstimatorSpec& estimator, std::size_t samples);

/// estimator_error for several estimators applied to the very same reports.
std::vector<CostEstimate> estimator_errors(const ScenarioConfig& config,
                                           const PolicyProfile& profile,
                                           std::span<const EstimatorSpec> estimators,
                                           std::size_t samples);

/// E[|x + theta_entity - estimate| | conditioning].
CostEstimate ex_post_cost(const ScenarioConfig& config, const PolicyProfile& profile,
                          const EstimatorSpec& estimator, std::size_t entity,
                          const Conditioning& conditioning, std::size_t samples);

/// Best response of `entity` over `grid` with every other policy held
/// fixed. All candidates see the same replicate streams, so the incumbent's
/// cost equals ex_ante_cost (or ex_post_cost when conditioned) exactly.
/// Ties go to the incumbent, then to the lowest grid index.
DeviationReport deviation_gain(const ScenarioConfig& config, const PolicyProfile& profile,
                               const EstimatorSpec& estimator, std::size_t entity,
                               std::span<const SensorPolicy> grid, std::size_t samples,
                               const std::optional<Conditioning>& conditioning = std::nullopt);

/// Per-replicate cost difference incumbent - alternative for `entity`.
PairedGain paired_gain(const ScenarioConfig& config, const PolicyProfile& profile,
                       const EstimatorSpec& estimator, std::size_t entity,
                       const SensorPolicy& alternative, std::size_t samples,
                       const std::optional<Conditioning>& conditioning = std::nullopt);

/// States used by the deterministic checks.
std::span<const double> probe_states();

/// Adversarial reports used when the caller does not supply any:
/// 0, +-1, +-1e9, +-infinity.
std::vector<double> default_adversarial_values();

/// For every slot, every probe state x and every adversarial value v, sets
/// that slot to v with all others at x and requires the estimate to equal x
/// exactly. No precondition on the estimator; Mean yields a witness.
ExactCheckReport single_deviation_scan(const ScenarioConfig& config,
                                       const EstimatorSpec& estimator,
                                       std::span<const double> adversarial_values);

/// single_deviation_scan restricted to the noiseless regime with a trimmed
/// estimator of level 1..floor((c-1)/2) or the median; anything else throws.
ExactCheckReport noiseless_truth_equilibrium_check(const ScenarioConfig& config,
                                                   const EstimatorSpec& estimator,
                                                   std::span<const double> adversarial_values);

/// Runs deviation_gain for `entity` playing noisy_equilibrium() against
/// each opponent profile. Requires the median estimator.
std::vector<DeviationReport> dominant_strategy_check(
    const ScenarioConfig& config, const EstimatorSpec& estimator,
    std::span<const PolicyProfile> opponent_profiles, std::span<const SensorPolicy> grid,
    std::size_t samples, std::size_t entity = 0);

}  // namespace psense
