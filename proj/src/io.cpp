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

#include "psense/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>

namespace psense {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 7> kScenarioKeys = {
    "n_sensors", "coalition_sizes", "var_x", "var_theta", "var_w", "seed", "samples"};

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

double real_field(const json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_number()) throw InvalidInput(std::string(key) + " must be a number");
    return v.get<double>();
}

std::uint64_t unsigned_field(const json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_number_unsigned()) {
        throw InvalidInput(std::string(key) + " must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

}  // namespace

ScenarioFile parse_scenario(const json& doc) {
    if (!doc.is_object()) throw InvalidInput("scenario must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        const bool known = key == "policies" ||
                           std::find(kScenarioKeys.begin(), kScenarioKeys.end(), key) !=
                               kScenarioKeys.end();
        if (!known) throw InvalidInput("unknown scenario key '" + key + "'");
    }
    for (auto key : kScenarioKeys) {
        if (!doc.contains(key)) throw InvalidInput("scenario is missing '" + std::string(key) + "'");
    }

    ScenarioFile out;
    auto& config = out.config;
    config.n_sensors = unsigned_field(doc, "n_sensors");
    const auto& sizes = doc.at("coalition_sizes");
    if (!sizes.is_array()) throw InvalidInput("coalition_sizes must be an array");
    config.coalition_sizes.clear();
    for (const auto& s : sizes) {
        if (!s.is_number_unsigned()) throw InvalidInput("coalition sizes must be positive integers");
        config.coalition_sizes.push_back(s.get<std::size_t>());
    }
    config.var_x = real_field(doc, "var_x");
    config.var_theta = real_field(doc, "var_theta");
    config.var_w = real_field(doc, "var_w");
    config.seed = unsigned_field(doc, "seed");
    config.samples = unsigned_field(doc, "samples");
    config.validate();

    if (doc.contains("policies")) {
        const auto& policies = doc.at("policies");
        if (!policies.is_array() || policies.size() != config.n_sensors) {
            throw InvalidInput("policies must be an array with one entry per sensor");
        }
        for (const auto& p : policies) out.policies.push_back(parse_policy_literal(p));
    }
    return out;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    return parse_scenario(read_json(path));
}

PolicyLiteral parse_policy_literal(const json& doc) {
    if (doc.is_string()) {
        const auto name = doc.get<std::string>();
        if (auto preset = parse_preset(name)) return *preset;
        throw InvalidInput("unknown policy preset '" + name + "'");
    }
    if (!doc.is_object()) throw InvalidInput("policy must be an object or a preset name");
    for (const auto& [key, value] : doc.items()) {
        if (key != "a" && key != "b" && key != "d" && key != "jitter_sd") {
            throw InvalidInput("unknown policy key '" + key + "'");
        }
    }
    SensorPolicy policy;
    policy.a = doc.contains("a") ? real_field(doc, "a") : 1.0;
    policy.b = doc.contains("b") ? real_field(doc, "b") : 0.0;
    policy.d = doc.contains("d") ? real_field(doc, "d") : 0.0;
    policy.jitter_sd = doc.contains("jitter_sd") ? real_field(doc, "jitter_sd") : 0.0;
    if (!(policy.jitter_sd >= 0.0)) throw InvalidInput("jitter_sd must be nonnegative");
    return policy;
}

std::vector<PolicyLiteral> load_policy_grid(const std::filesystem::path& path) {
    const auto doc = read_json(path);
    if (!doc.is_array() || doc.empty()) {
        throw InvalidInput("policy grid must be a nonempty JSON array");
    }
    std::vector<PolicyLiteral> grid;
    for (const auto& p : doc) grid.push_back(parse_policy_literal(p));
    return grid;
}

PolicyProfile resolve_profile(const ScenarioFile& scenario, const EstimatorSpec& estimator) {
    const auto& config = scenario.config;
    const std::size_t reports = config.total_reports();
    const std::size_t level = estimator.trim_level(reports);
    if (scenario.policies.empty()) return PolicyProfile::uniform(config.n_sensors, truthful());
    PolicyProfile profile;
    for (const auto& literal : scenario.policies) {
        profile.policies.push_back(resolve(literal, reports, level));
    }
    return profile;
}

json real_to_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json to_json(const ScenarioConfig& config) {
    return {{"n_sensors", config.n_sensors}, {"coalition_sizes", config.coalition_sizes},
            {"var_x", config.var_x},         {"var_theta", config.var_theta},
            {"var_w", config.var_w},         {"seed", config.seed},
            {"samples", config.samples}};
}

json to_json(const SensorPolicy& policy) {
    return {{"a", policy.a}, {"b", policy.b}, {"d", policy.d}, {"jitter_sd", policy.jitter_sd}};
}

json to_json(const CostEstimate& cost) {
    return {{"mean", real_to_json(cost.mean)},
            {"half_width_95", real_to_json(cost.half_width_95)},
            {"samples", cost.samples}};
}

json to_json(const DeviationReport& report) {
    return {{"deviator", report.deviator},
            {"base_cost", to_json(report.base_cost)},
            {"best_policy", to_json(report.best_policy)},
            {"best_index", report.best_index},
            {"best_cost", to_json(report.best_cost)},
            {"gain", real_to_json(report.gain)},
            {"significant", report.significant}};
}

json to_json(const ExactCheckReport& report) {
    json out = {{"holds", report.holds}};
    if (report.witness) {
        json reports = json::array();
        for (double y : report.witness->reports) reports.push_back(real_to_json(y));
        out["witness"] = {{"state", real_to_json(report.witness->state)},
                          {"reports", reports},
                          {"estimate", real_to_json(report.witness->estimate)}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

json to_json(const PairedGain& gain) {
    return {{"mean", real_to_json(gain.mean)},
            {"std_error", real_to_json(gain.std_error)},
            {"z_score", real_to_json(gain.z_score)},
            {"samples", gain.samples}};
}

}  // namespace psense
