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

#include "psense/policies.hpp"

#include <string>

namespace psense {

PolicyProfile PolicyProfile::with(std::size_t entity, const SensorPolicy& policy) const {
    if (entity >= policies.size()) {
        throw InvalidInput("entity " + std::to_string(entity) + " out of range for a profile of " +
                           std::to_string(policies.size()));
    }
    PolicyProfile copy = *this;
    copy.policies[entity] = policy;
    return copy;
}

double apply_policy(const SensorPolicy& policy, double z, double theta, RngStream& rng) {
    const double noise = policy.deterministic() ? 0.0 : rng.normal();
    return report_value(policy, z, theta, noise);
}

SensorPolicy truthful() { return {1.0, 0.0, 0.0, 0.0}; }

SensorPolicy averaging_attack(std::size_t n) {
    if (n < 2) throw InvalidInput("averaging attack needs n >= 2, got " + std::to_string(n));
    return {1.0, static_cast<double>(n), 0.0, 0.0};
}

SensorPolicy trimmed_attack(std::size_t n, std::size_t level) {
    if (n < 2 * level + 1 || n < 2) {
        throw InvalidInput("trimmed attack needs n >= 2 * level + 1, got n = " +
                           std::to_string(n) + ", level = " + std::to_string(level));
    }
    return {1.0, static_cast<double>(n - 2 * level), 0.0, 0.0};
}

SensorPolicy noisy_equilibrium() { return {1.0, 1.0, 0.0, 0.0}; }

std::optional<PolicyPreset> parse_preset(std::string_view name) {
    if (name == "truthful") return PolicyPreset::Truthful;
    if (name == "averaging_attack") return PolicyPreset::AveragingAttack;
    if (name == "trimmed_attack") return PolicyPreset::TrimmedAttack;
    if (name == "noisy_equilibrium") return PolicyPreset::NoisyEquilibrium;
    return std::nullopt;
}

std::string_view preset_name(PolicyPreset preset) {
    switch (preset) {
        case PolicyPreset::Truthful:
            return "truthful";
        case PolicyPreset::AveragingAttack:
            return "averaging_attack";
        case PolicyPreset::TrimmedAttack:
            return "trimmed_attack";
        case PolicyPreset::NoisyEquilibrium:
            return "noisy_equilibrium";
    }
    return {};
}

SensorPolicy resolve(const PolicyLiteral& literal, std::size_t reports, std::size_t level) {
    if (const auto* policy = std::get_if<SensorPolicy>(&literal)) {
        if (!(policy->jitter_sd >= 0.0)) throw InvalidInput("jitter_sd must be nonnegative");
        return *policy;
    }
    switch (std::get<PolicyPreset>(literal)) {
        case PolicyPreset::Truthful:
            return truthful();
        case PolicyPreset::AveragingAttack:
            return averaging_attack(reports);
        case PolicyPreset::TrimmedAttack:
            return trimmed_attack(reports, level);
        case PolicyPreset::NoisyEquilibrium:
            return noisy_equilibrium();
    }
    return truthful();
}

std::vector<SensorPolicy> default_policy_grid() {
    std::vector<SensorPolicy> grid;
    grid.reserve(17 * 17 * 9 * 3);
    for (int ai = 0; ai <= 16; ++ai) {
        for (int bi = 0; bi <= 16; ++bi) {
            for (int di = 0; di <= 8; ++di) {
                for (double jitter : {0.0, 0.5, 1.0}) {
                    grid.push_back({-1.0 + 0.25 * ai, -1.0 + 0.25 * bi, -2.0 + 0.5 * di, jitter});
                }
            }
        }
    }
    return grid;
}

}  // namespace psense
