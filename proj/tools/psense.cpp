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

// Command-line front end: cost simulation, equilibrium and coalition
// checks, and the error-versus-n experiments.
//
// Exit codes: 0 success / claim holds, 2 claim refuted, 64 usage error,
// 74 I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "psense/coalitions.hpp"
#include "psense/experiments.hpp"
#include "psense/game.hpp"
#include "psense/io.hpp"
#include "psense/parallel.hpp"

namespace {

using nlohmann::json;
using namespace psense;

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

void print(const json& doc) { std::cout << doc.dump(2) << '\n'; }

int run_simulate(const std::string& config_path, const std::string& estimator_text,
                 std::size_t samples, std::optional<std::size_t> entity) {
    const auto scenario = load_scenario(config_path);
    const auto estimator = parse_estimator(estimator_text);
    const auto profile = resolve_profile(scenario, estimator);
    const auto cost = entity ? ex_ante_cost(scenario.config, profile, estimator, *entity, samples)
                             : estimator_error(scenario.config, profile, estimator, samples);
    json out = to_json(cost);
    out["estimator"] = estimator.to_string();
    out["target"] = entity ? "x + theta[" + std::to_string(*entity) + "]" : std::string("x");
    print(out);
    return kExitOk;
}

bool exact_check_applies(const ScenarioConfig& config, const PolicyProfile& profile,
                         const EstimatorSpec& estimator) {
    if (!config.noiseless()) return false;
    for (const auto& p : profile.policies) {
        if (!(p == truthful())) return false;
    }
    const std::size_t c = config.total_reports();
    switch (estimator.kind) {
        case EstimatorSpec::Kind::Mean:
            return false;
        case EstimatorSpec::Kind::Trimmed:
            return estimator.level >= 1 && estimator.level <= (c - 1) / 2;
        case EstimatorSpec::Kind::Median:
            return true;
    }
    return false;
}

int run_check_equilibrium(const std::string& config_path, const std::string& estimator_text,
                          const std::string& grid_spec) {
    const auto scenario = load_scenario(config_path);
    const auto& config = scenario.config;
    const auto estimator = parse_estimator(estimator_text);
    const auto profile = resolve_profile(scenario, estimator);

    if (exact_check_applies(config, profile, estimator)) {
        const auto report =
            noiseless_truth_equilibrium_check(config, estimator, default_adversarial_values());
        print({{"mode", "exact"}, {"estimator", estimator.to_string()}, {"report", to_json(report)}});
        return report.holds ? kExitOk : kExitRefuted;
    }

    const std::size_t reports = config.total_reports();
    const std::size_t level = estimator.trim_level(reports);
    std::vector<SensorPolicy> base_grid;
    if (grid_spec == "default") {
        base_grid = default_policy_grid();
    } else {
        for (const auto& literal : load_policy_grid(grid_spec)) {
            base_grid.push_back(resolve(literal, reports, level));
        }
    }

    // Entities with the same policy and coalition size are interchangeable;
    // only the first of each class is searched.
    json deviations = json::array();
    bool refuted = false;
    for (std::size_t i = 0; i < config.n_sensors; ++i) {
        bool seen = false;
        for (std::size_t j = 0; j < i && !seen; ++j) {
            seen = profile[j] == profile[i] && config.coalition_sizes[j] == config.coalition_sizes[i];
        }
        if (seen) continue;
        auto grid = base_grid;
        if (std::find(grid.begin(), grid.end(), profile[i]) == grid.end()) {
            grid.push_back(profile[i]);
        }
        const auto report = deviation_gain(config, profile, estimator, i, grid, config.samples);
        refuted = refuted || report.significant;
        deviations.push_back(to_json(report));
    }
    print({{"mode", "search"},
           {"estimator", estimator.to_string()},
           {"refuted", refuted},
           {"deviations", deviations}});
    return refuted ? kExitRefuted : kExitOk;
}

int run_check_coalition(const std::string& config_path, const std::string& estimator_text) {
    const auto scenario_file = load_scenario(config_path);
    const auto estimator = parse_estimator(estimator_text);
    const auto scenario = CoalitionScenario::from(scenario_file.config);
    if (!scenario.base.noiseless()) {
        throw InvalidInput("the coalition check requires var_w = 0");
    }

    std::optional<std::string> violated;
    try {
        require_coalition_robust(scenario, estimator);
    } catch (const InvalidInput& e) {
        violated = e.what();
    }

    ExactCheckReport report;
    std::size_t deviator = 0;
    for (; deviator < scenario.base.n_sensors; ++deviator) {
        const auto tuples = adversarial_tuples(coalition_probe_values(),
                                               scenario.base.coalition_sizes[deviator]);
        report = violated ? coalition_deviation_scan(scenario, estimator, deviator, tuples)
                          : coalition_invariance_check(scenario, estimator, deviator, tuples);
        if (!report.holds) break;
    }
    json out = {{"estimator", estimator.to_string()},
                {"coalition_sizes", scenario.base.coalition_sizes},
                {"total_reports", scenario.total_reports},
                {"preconditions_met", !violated.has_value()},
                {"report", to_json(report)}};
    if (violated) out["violated_precondition"] = *violated;
    if (!report.holds) out["deviator"] = deviator;
    print(out);
    return report.holds ? kExitOk : kExitRefuted;
}

json points_json(const std::vector<CurvePoint>& points) {
    json out = json::array();
    for (const auto& p : points) {
        out.push_back({{"n", p.n}, {"estimator", p.estimator.to_string()}, {"error", to_json(p.error)}});
    }
    return out;
}

int run_curves(bool figure1, const std::string& n_text, std::size_t samples, std::uint64_t seed,
               const std::string& csv, const std::string& svg) {
    const auto n_list = parse_n_list(n_text);
    const auto points = figure1 ? figure1_experiment(n_list, samples, seed)
                                : consistency_experiment(n_list, samples, seed);
    if (!csv.empty()) write_curves_csv(points, csv);
    if (!svg.empty()) render_curves_svg(points, svg);
    print({{"experiment", figure1 ? "figure1" : "consistency"},
           {"samples", samples},
           {"seed", seed},
           {"points", points_json(points)}});
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strategic participatory-sensing simulator"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");

    std::string config_path;
    std::string estimator_text;
    std::size_t samples = 10000;
    std::optional<std::size_t> entity;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo cost of a scenario's profile");
    simulate->add_option("--config", config_path, "scenario JSON")->required();
    simulate->add_option("--estimator", estimator_text, "mean | trimmed:<l> | median")->required();
    simulate->add_option("--samples", samples, "replicates")->required();
    simulate->add_option("--entity", entity, "score x + theta[i] instead of x");

    auto* check = app.add_subcommand("check", "equilibrium and coalition checks");
    check->require_subcommand(1);
    std::string grid_spec = "default";
    auto* equilibrium = check->add_subcommand("equilibrium", "is the profile an equilibrium?");
    equilibrium->add_option("--config", config_path, "scenario JSON")->required();
    equilibrium->add_option("--estimator", estimator_text, "mean | trimmed:<l> | median")
        ->required();
    equilibrium->add_option("--grid", grid_spec, "'default' or a JSON array of policies");
    auto* coalition = check->add_subcommand("coalition", "exact coalition invariance check");
    coalition->add_option("--config", config_path, "scenario JSON")->required();
    coalition->add_option("--estimator", estimator_text, "mean | trimmed:<l> | median")->required();

    std::string n_text;
    std::uint64_t seed = 0;
    std::string csv;
    std::string svg;
    auto* figure1 = app.add_subcommand("figure1", "mean and median error versus n");
    figure1->add_option("--n", n_text, "odd n values, e.g. 11,21,...,101")->required();
    figure1->add_option("--samples", samples, "replicates per n");
    figure1->add_option("--seed", seed, "seed");
    figure1->add_option("--csv", csv, "CSV output path");
    figure1->add_option("--svg", svg, "SVG output path");
    auto* consistency = app.add_subcommand("consistency", "median error as n grows");
    consistency->add_option("--n", n_text, "increasing odd n values")->required();
    consistency->add_option("--samples", samples, "replicates per n");
    consistency->add_option("--seed", seed, "seed");
    consistency->add_option("--csv", csv, "CSV output path");
    consistency->add_option("--svg", svg, "SVG output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        set_worker_threads(threads);
        if (simulate->parsed()) return run_simulate(config_path, estimator_text, samples, entity);
        if (equilibrium->parsed()) {
            return run_check_equilibrium(config_path, estimator_text, grid_spec);
        }
        if (coalition->parsed()) return run_check_coalition(config_path, estimator_text);
        if (figure1->parsed()) return run_curves(true, n_text, samples, seed, csv, svg);
        if (consistency->parsed()) return run_curves(false, n_text, samples, seed, csv, svg);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
