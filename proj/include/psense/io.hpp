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

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "psense/core.hpp"
#include "psense/estimators.hpp"
#include "psense/game.hpp"
#include "psense/policies.hpp"

namespace psense {

/// Contents of a scenario file: the seven ScenarioConfig keys, plus an
/// optional "policies" array (one literal per entity; all truthful when
/// absent).
struct ScenarioFile {
    ScenarioConfig config;
    std::vector<PolicyLiteral> policies;
};

ScenarioFile parse_scenario(const nlohmann::json& doc);
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Object {"a","b","d","jitter_sd"} or one of the preset names.
PolicyLiteral parse_policy_literal(const nlohmann::json& doc);

/// A JSON array of policy literals.
std::vector<PolicyLiteral> load_policy_grid(const std::filesystem::path& path);

/// Presets are instantiated with the scenario's report count and the
/// estimator's trim level.
PolicyProfile resolve_profile(const ScenarioFile& scenario, const EstimatorSpec& estimator);

/// Non-finite reals are written as the strings "inf", "-inf" and "nan".
nlohmann::json real_to_json(double v);

nlohmann::json to_json(const ScenarioConfig& config);
nlohmann::json to_json(const SensorPolicy& policy);
nlohmann::json to_json(const CostEstimate& cost);
nlohmann::json to_json(const DeviationReport& report);
nlohmann::json to_json(const ExactCheckReport& report);
nlohmann::json to_json(const PairedGain& gain);

}  // namespace psense
