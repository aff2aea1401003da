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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "psense/core.hpp"

namespace psense {

/// Affine-Gaussian reporting rule: y = a*z + b*theta + d + eps, with
/// eps ~ N(0, jitter_sd^2). Parameters are fixed before anything is drawn.
struct SensorPolicy {
    double a = 1.0;
    double b = 0.0;
    double d = 0.0;
    double jitter_sd = 0.0;

    bool deterministic() const { return jitter_sd == 0.0; }

    friend bool operator==(const SensorPolicy&, const SensorPolicy&) = default;
};

/// One policy per strategic entity; coalition members share their entity's.
struct PolicyProfile {
    std::vector<SensorPolicy> policies;

    static PolicyProfile uniform(std::size_t entities, const SensorPolicy& policy) {
        return {std::vector<SensorPolicy>(entities, policy)};
    }

    /// Copy with `entity` switched to `policy`.
    PolicyProfile with(std::size_t entity, const SensorPolicy& policy) const;

    std::size_t size() const { return policies.size(); }
    const SensorPolicy& operator[](std::size_t i) const { return policies[i]; }
};

/// Report for a given unit-variance noise value; no randomness is consumed.
inline double report_value(const SensorPolicy& policy, double z, double theta,
                           double unit_noise) {
    double y = policy.a * z + policy.b * theta + policy.d;
    if (policy.jitter_sd != 0.0) y += policy.jitter_sd * unit_noise;
    return y;
}

/// Draws from the policy's conditional distribution. Only jittered
/// policies consume a variate from `rng`.
double apply_policy(const SensorPolicy& policy, double z, double theta, RngStream& rng);

/// Reports the measurement as is.
SensorPolicy truthful();

/// Deviation that lets one sensor steer the plain average of n reports
/// onto its own target when everyone else is truthful.
SensorPolicy averaging_attack(std::size_t n);

/// Same idea against the trimmed mean: when the deviator's report survives
/// trimming, it carries weight 1 / (n - 2 * level).
SensorPolicy trimmed_attack(std::size_t n, std::size_t level);

/// Reports z + theta, the best response under the median with noisy
/// measurements.
SensorPolicy noisy_equilibrium();

/// Named presets accepted wherever a policy literal is parsed.
enum class PolicyPreset { Truthful, AveragingAttack, TrimmedAttack, NoisyEquilibrium };

using PolicyLiteral = std::variant<SensorPolicy, PolicyPreset>;

std::optional<PolicyPreset> parse_preset(std::string_view name);
std::string_view preset_name(PolicyPreset preset);

/// Instantiates a literal for `reports` total reports and trim `level`.
SensorPolicy resolve(const PolicyLiteral& literal, std::size_t reports, std::size_t level);

/// The default search grid: a, b in [-1, 3] step 0.25, d in [-2, 2] step
/// 0.5, jitter_sd in {0, 0.5, 1}. Contains truthful() and noisy_equilibrium().
std::vector<SensorPolicy> default_policy_grid();

}  // namespace psense
