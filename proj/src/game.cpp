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

#include "psense/game.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "psense/parallel.hpp"

namespace psense {
namespace {

constexpr double kZ95 = 1.96;

void validate_game(const ScenarioConfig& config, const PolicyProfile& profile,
                   const EstimatorSpec& estimator) {
    config.validate();
    if (profile.size() != config.n_sensors) {
        throw InvalidInput("profile has " + std::to_string(profile.size()) +
                           " policies, expected " + std::to_string(config.n_sensors));
    }
    for (const auto& p : profile.policies) {
        if (!(p.jitter_sd >= 0.0)) throw InvalidInput("jitter_sd must be nonnegative");
    }
    estimator.check_applicable(config.total_reports());
}

void validate_entity(const ScenarioConfig& config, std::size_t entity) {
    if (entity >= config.n_sensors) {
        throw InvalidInput("entity " + std::to_string(entity) + " out of range for " +
                           std::to_string(config.n_sensors) + " sensors");
    }
}

void validate_samples(std::size_t samples) {
    if (samples == 0) throw InvalidInput("samples must be positive");
}

void validate_conditioning(const Conditioning& conditioning) {
    if (!std::isfinite(conditioning.value) || !std::isfinite(conditioning.theta)) {
        throw InvalidInput("conditioning values must be finite");
    }
}

struct RoundInputs {
    WorldDraw world;
    std::vector<double> unit_noise;
};

// Pins the conditioned quantities after an unconditional draw, so the
// number of variates consumed per replicate never changes.
void apply_conditioning(const ScenarioConfig& config, std::size_t entity,
                        const Conditioning& conditioning, WorldDraw& world) {
    world.theta[entity] = conditioning.theta;
    const std::size_t pinned_slot = config.first_slot(entity);
    if (conditioning.kind == Conditioning::Kind::StateAndBias) {
        world.x = conditioning.value;
    } else if (config.var_w == 0.0) {
        world.x = conditioning.value;
    } else if (config.var_x == 0.0) {
        world.x = 0.0;
    } else {
        // x | z ~ N(z * vx / (vx + vw), vx * vw / (vx + vw)), reusing x's unit draw.
        const double total = config.var_x + config.var_w;
        const double unit = world.x / std::sqrt(config.var_x);
        world.x = conditioning.value * config.var_x / total +
                  std::sqrt(config.var_x * config.var_w / total) * unit;
    }
    for (std::size_t k = 0; k < world.z.size(); ++k) {
        world.z[k] = world.x + world.w[k];
        world.w[k] = world.z[k] - world.x;
    }
    if (conditioning.kind == Conditioning::Kind::MeasurementAndBias) {
        world.z[pinned_slot] = conditioning.value;
        world.w[pinned_slot] = world.z[pinned_slot] - world.x;
    }
}

RoundInputs draw_round(const ScenarioConfig& config, RngStream& rng, std::size_t entity,
                       const std::optional<Conditioning>& conditioning) {
    RoundInputs inputs{sample_world(config, rng), {}};
    inputs.unit_noise.resize(config.total_reports());
    for (auto& u : inputs.unit_noise) u = rng.normal();
    if (conditioning) apply_conditioning(config, entity, *conditioning, inputs.world);
    return inputs;
}

std::vector<double> build_reports(const ScenarioConfig& config, const PolicyProfile& profile,
                                  const RoundInputs& inputs) {
    std::vector<double> reports(config.total_reports());
    std::size_t slot = 0;
    for (std::size_t i = 0; i < config.n_sensors; ++i) {
        for (std::size_t j = 0; j < config.coalition_sizes[i]; ++j, ++slot) {
            reports[slot] = report_value(profile[i], inputs.world.z[slot], inputs.world.theta[i],
                                         inputs.unit_noise[slot]);
        }
    }
    return reports;
}

std::vector<double> round_losses(const ScenarioConfig& config, const PolicyProfile& profile,
                                 const EstimatorSpec& estimator, std::optional<std::size_t> entity,
                                 const std::optional<Conditioning>& conditioning,
                                 std::size_t samples) {
    std::vector<double> losses(samples);
    parallel_for(samples, [&](std::size_t r) {
        auto rng = make_rng(config.seed, r);
        const auto inputs = draw_round(config, rng, entity.value_or(0), conditioning);
        const auto reports = build_reports(config, profile, inputs);
        const double target = inputs.world.x + (entity ? inputs.world.theta[*entity] : 0.0);
        losses[r] = std::abs(target - estimate(estimator, reports));
    });
    return losses;
}

// Precomputed replicates for unilateral deviations of one entity.
//
// For each replicate only the slice of the other entities' sorted reports
// that can survive trimming is kept, together with the neighbouring order
// statistics. Clamping the deviator's reports to those neighbours leaves
// the surviving values unchanged, so inserting them into the slice
// reproduces the full estimator bitwise.
class DeviationKernel {
public:
    DeviationKernel(const ScenarioConfig& config, const PolicyProfile& profile,
                    const EstimatorSpec& estimator, std::size_t entity, std::size_t samples,
                    const std::optional<Conditioning>& conditioning)
        : samples_(samples) {
        const std::size_t reports = config.total_reports();
        dev_slots_ = config.coalition_sizes[entity];
        level_ = estimator.trim_level(reports);
        const std::size_t others = reports - dev_slots_;
        lo_ = level_ > dev_slots_ ? level_ - dev_slots_ : 0;
        const std::size_t hi = std::min(others - 1, reports - level_ - 1);
        window_ = hi - lo_ + 1;
        survivors_ = reports - 2 * level_;
        first_survivor_ = level_ - lo_;

        window_values_.resize(samples * window_);
        lower_.resize(samples);
        upper_.resize(samples);
        dev_z_.resize(samples * dev_slots_);
        dev_noise_.resize(samples * dev_slots_);
        theta_.resize(samples);
        target_.resize(samples);

        const std::size_t first = config.first_slot(entity);
        parallel_for(samples, [&](std::size_t r) {
            auto rng = make_rng(config.seed, r);
            const auto inputs = draw_round(config, rng, entity, conditioning);
            const auto all = build_reports(config, profile, inputs);
            std::vector<double> rest;
            rest.reserve(others);
            for (std::size_t k = 0; k < reports; ++k) {
                if (k < first || k >= first + dev_slots_) rest.push_back(all[k]);
            }
            rest = sorted_reports(rest);
            std::copy_n(rest.begin() + lo_, window_, window_values_.begin() + r * window_);
            lower_[r] = lo_ > 0 ? rest[lo_ - 1] : -std::numeric_limits<double>::infinity();
            upper_[r] = hi + 1 < others ? rest[hi + 1] : std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < dev_slots_; ++j) {
                dev_z_[r * dev_slots_ + j] = inputs.world.z[first + j];
                dev_noise_[r * dev_slots_ + j] = inputs.unit_noise[first + j];
            }
            theta_[r] = inputs.world.theta[entity];
            target_[r] = inputs.world.x + inputs.world.theta[entity];
        });
    }

    std::size_t samples() const { return samples_; }

    double loss(std::size_t r, const SensorPolicy& policy, std::vector<double>& buffer) const {
        buffer.resize(window_ + dev_slots_);
        double* buf = buffer.data();
        std::copy_n(window_values_.data() + r * window_, window_, buf);
        std::size_t size = window_;
        for (std::size_t j = 0; j < dev_slots_; ++j) {
            const double y = std::clamp(report_value(policy, dev_z_[r * dev_slots_ + j], theta_[r],
                                                     dev_noise_[r * dev_slots_ + j]),
                                        lower_[r], upper_[r]);
            std::size_t pos = size;
            for (; pos > 0 && buf[pos - 1] > y; --pos) buf[pos] = buf[pos - 1];
            buf[pos] = y;
            ++size;
        }
        const double est = mean_of_sorted(std::span(buf + first_survivor_, survivors_));
        return std::abs(target_[r] - est);
    }

    CostEstimate cost(const SensorPolicy& policy) const {
        CostAccumulator acc;
        std::vector<double> buffer;
        buffer.reserve(window_ + dev_slots_);
        for (std::size_t r = 0; r < samples_; ++r) acc.add(loss(r, policy, buffer));
        return acc.result();
    }

    std::vector<double> losses(const SensorPolicy& policy) const {
        std::vector<double> out(samples_);
        std::vector<double> buffer;
        for (std::size_t r = 0; r < samples_; ++r) out[r] = loss(r, policy, buffer);
        return out;
    }

private:
    std::size_t samples_;
    std::size_t dev_slots_ = 1;
    std::size_t level_ = 0;
    std::size_t lo_ = 0;
    std::size_t window_ = 0;
    std::size_t survivors_ = 0;
    std::size_t first_survivor_ = 0;
    std::vector<double> window_values_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<double> dev_z_;
    std::vector<double> dev_noise_;
    std::vector<double> theta_;
    std::vector<double> target_;
};

void validate_deviation(const ScenarioConfig& config, const PolicyProfile& profile,
                        const EstimatorSpec& estimator, std::size_t entity, std::size_t samples,
                        const std::optional<Conditioning>& conditioning) {
    validate_game(config, profile, estimator);
    validate_entity(config, entity);
    validate_samples(samples);
    if (conditioning) validate_conditioning(*conditioning);
}

}  // namespace

void CostAccumulator::add(double loss) {
    ++count_;
    const double delta = loss - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (loss - mean_);
}

CostEstimate CostAccumulator::result() const {
    CostEstimate out;
    out.samples = count_;
    out.mean = mean_;
    if (count_ > 1) {
        const double sd = std::sqrt(m2_ / static_cast<double>(count_ - 1));
        out.half_width_95 = kZ95 * sd / std::sqrt(static_cast<double>(count_));
    }
    return out;
}

CostEstimate CostEstimate::from_losses(std::span<const double> losses) {
    CostAccumulator acc;
    for (double l : losses) acc.add(l);
    return acc.result();
}

RoundSample simulate_round(const ScenarioConfig& config, const PolicyProfile& profile,
                           const EstimatorSpec& estimator, RngStream& rng) {
    validate_game(config, profile, estimator);
    auto inputs = draw_round(config, rng, 0, std::nullopt);
    RoundSample sample;
    sample.reports = build_reports(config, profile, inputs);
    sample.estimate = estimate(estimator, sample.reports);
    sample.world = std::move(inputs.world);
    return sample;
}

CostEstimate ex_ante_cost(const ScenarioConfig& config, const PolicyProfile& profile,
                          const EstimatorSpec& estimator, std::size_t entity,
                          std::size_t samples) {
    validate_game(config, profile, estimator);
    validate_entity(config, entity);
    validate_samples(samples);
    return CostEstimate::from_losses(
        round_losses(config, profile, estimator, entity, std::nullopt, samples));
}

CostEstimate estimator_error(const ScenarioConfig& config, const PolicyProfile& profile,
                             const EstimatorSpec& estimator, std::size_t samples) {
    return estimator_errors(config, profile, std::span(&estimator, 1), samples).front();
}

std::vector<CostEstimate> estimator_errors(const ScenarioConfig& config,
                                           const PolicyProfile& profile,
                                           std::span<const EstimatorSpec> estimators,
                                           std::size_t samples) {
    for (const auto& e : estimators) validate_game(config, profile, e);
    validate_samples(samples);
    const std::size_t count = estimators.size();
    std::vector<double> losses(samples * count);
    parallel_for(samples, [&](std::size_t r) {
        auto rng = make_rng(config.seed, r);
        const auto inputs = draw_round(config, rng, 0, std::nullopt);
        const auto reports = build_reports(config, profile, inputs);
        for (std::size_t e = 0; e < count; ++e) {
            losses[e * samples + r] = std::abs(inputs.world.x - estimate(estimators[e], reports));
        }
    });
    std::vector<CostEstimate> out;
    out.reserve(count);
    for (std::size_t e = 0; e < count; ++e) {
        out.push_back(CostEstimate::from_losses(std::span(losses).subspan(e * samples, samples)));
    }
    return out;
}

CostEstimate ex_post_cost(const ScenarioConfig& config, const PolicyProfile& profile,
                          const EstimatorSpec& estimator, std::size_t entity,
                          const Conditioning& conditioning, std::size_t samples) {
    validate_game(config, profile, estimator);
    validate_entity(config, entity);
    validate_samples(samples);
    validate_conditioning(conditioning);
    return CostEstimate::from_losses(
        round_losses(config, profile, estimator, entity, conditioning, samples));
}

DeviationReport deviation_gain(const ScenarioConfig& config, const PolicyProfile& profile,
                               const EstimatorSpec& estimator, std::size_t entity,
                               std::span<const SensorPolicy> grid, std::size_t samples,
                               const std::optional<Conditioning>& conditioning) {
    validate_deviation(config, profile, estimator, entity, samples, conditioning);
    if (grid.empty()) throw InvalidInput("deviation grid must not be empty");
    const SensorPolicy& incumbent = profile[entity];
    const auto incumbent_it = std::find(grid.begin(), grid.end(), incumbent);
    if (incumbent_it == grid.end()) {
        throw InvalidInput("deviation grid must contain the incumbent policy");
    }
    for (const auto& p : grid) {
        if (!(p.jitter_sd >= 0.0)) throw InvalidInput("jitter_sd must be nonnegative");
    }

    const DeviationKernel kernel(config, profile, estimator, entity, samples, conditioning);
    std::vector<CostEstimate> costs(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { costs[i] = kernel.cost(grid[i]); });

    const auto incumbent_index = static_cast<std::size_t>(incumbent_it - grid.begin());
    std::size_t best = incumbent_index;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (costs[i].mean < costs[best].mean) best = i;
    }

    DeviationReport report;
    report.deviator = entity;
    report.base_cost = costs[incumbent_index];
    report.best_policy = grid[best];
    report.best_index = best;
    report.best_cost = costs[best];
    report.gain = report.base_cost.mean - report.best_cost.mean;
    report.significant =
        report.gain > report.base_cost.half_width_95 + report.best_cost.half_width_95;
    return report;
}

PairedGain paired_gain(const ScenarioConfig& config, const PolicyProfile& profile,
                       const EstimatorSpec& estimator, std::size_t entity,
                       const SensorPolicy& alternative, std::size_t samples,
                       const std::optional<Conditioning>& conditioning) {
    validate_deviation(config, profile, estimator, entity, samples, conditioning);
    const DeviationKernel kernel(config, profile, estimator, entity, samples, conditioning);
    const auto base = kernel.losses(profile[entity]);
    const auto alt = kernel.losses(alternative);
    std::vector<double> diff(samples);
    for (std::size_t r = 0; r < samples; ++r) diff[r] = base[r] - alt[r];
    const auto summary = CostEstimate::from_losses(diff);

    PairedGain out;
    out.samples = samples;
    out.mean = summary.mean;
    out.std_error = summary.half_width_95 / kZ95;
    if (out.std_error > 0.0) {
        out.z_score = out.mean / out.std_error;
    } else if (out.mean != 0.0) {
        out.z_score = std::copysign(std::numeric_limits<double>::infinity(), out.mean);
    }
    return out;
}

std::span<const double> probe_states() {
    static constexpr std::array<double, 7> states = {0.0, 1.0, -1.0, 10.0, -10.0, 3.7, -3.7};
    return states;
}

std::vector<double> default_adversarial_values() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {0.0, 1.0, -1.0, 1e9, -1e9, inf, -inf};
}

ExactCheckReport single_deviation_scan(const ScenarioConfig& config,
                                       const EstimatorSpec& estimator,
                                       std::span<const double> adversarial_values) {
    const std::size_t reports = config.total_reports();
    estimator.check_applicable(reports);
    std::vector<double> y(reports);
    for (std::size_t slot = 0; slot < reports; ++slot) {
        for (double x : probe_states()) {
            for (double v : adversarial_values) {
                std::fill(y.begin(), y.end(), x);
                y[slot] = v;
                const double est = estimate(estimator, y);
                if (est != x) return {false, Witness{x, y, est}};
            }
        }
    }
    return {true, std::nullopt};
}

ExactCheckReport noiseless_truth_equilibrium_check(const ScenarioConfig& config,
                                                   const EstimatorSpec& estimator,
                                                   std::span<const double> adversarial_values) {
    config.validate();
    if (!config.noiseless()) {
        throw InvalidInput("the exact truth-telling check requires var_w = 0");
    }
    const std::size_t reports = config.total_reports();
    switch (estimator.kind) {
        case EstimatorSpec::Kind::Mean:
            throw InvalidInput("the exact truth-telling check does not apply to the mean");
        case EstimatorSpec::Kind::Trimmed:
            if (estimator.level < 1 || estimator.level > (reports - 1) / 2) {
                throw InvalidInput("trim level " + std::to_string(estimator.level) +
                                   " outside 1.." + std::to_string((reports - 1) / 2) +
                                   " for m = " + std::to_string(reports) + " reports");
            }
            break;
        case EstimatorSpec::Kind::Median:
            break;
    }
    return single_deviation_scan(config, estimator, adversarial_values);
}

std::vector<DeviationReport> dominant_strategy_check(
    const ScenarioConfig& config, const EstimatorSpec& estimator,
    std::span<const PolicyProfile> opponent_profiles, std::span<const SensorPolicy> grid,
    std::size_t samples, std::size_t entity) {
    if (estimator.kind != EstimatorSpec::Kind::Median) {
        throw InvalidInput("dominant strategy check is defined for the median estimator");
    }
    if (opponent_profiles.empty()) throw InvalidInput("no opponent profiles given");
    std::vector<DeviationReport> reports;
    reports.reserve(opponent_profiles.size());
    for (const auto& opponents : opponent_profiles) {
        validate_entity(config, entity);
        if (opponents.size() != config.n_sensors) {
            throw InvalidInput("opponent profile size does not match n_sensors");
        }
        reports.push_back(deviation_gain(config, opponents.with(entity, noisy_equilibrium()),
                                         estimator, entity, grid, samples));
    }
    return reports;
}

}  // namespace psense
