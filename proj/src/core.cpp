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

#include "psense/core.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace psense {
namespace {

std::uint64_t splitmix64(std::uint64_t v) {
    v += 0x9e3779b97f4a7c15ULL;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    return v ^ (v >> 31);
}

double scaled(double unit, double variance) {
    return variance == 0.0 ? 0.0 : std::sqrt(variance) * unit;
}

}  // namespace

ScenarioConfig ScenarioConfig::with_sensors(std::size_t n) {
    ScenarioConfig config;
    config.n_sensors = n;
    config.coalition_sizes.assign(n, 1);
    return config;
}

std::size_t ScenarioConfig::total_reports() const {
    return std::accumulate(coalition_sizes.begin(), coalition_sizes.end(), std::size_t{0});
}

std::size_t ScenarioConfig::first_slot(std::size_t entity) const {
    if (entity >= coalition_sizes.size()) {
        throw InvalidInput("entity " + std::to_string(entity) + " out of range for " +
                           std::to_string(coalition_sizes.size()) + " entities");
    }
    return std::accumulate(coalition_sizes.begin(), coalition_sizes.begin() + entity,
                           std::size_t{0});
}

void ScenarioConfig::validate() const {
    if (n_sensors < 2) {
        throw InvalidInput("n_sensors must be at least 2, got " + std::to_string(n_sensors));
    }
    if (coalition_sizes.size() != n_sensors) {
        throw InvalidInput("coalition_sizes has " + std::to_string(coalition_sizes.size()) +
                           " entries, expected n_sensors = " + std::to_string(n_sensors));
    }
    for (auto size : coalition_sizes) {
        if (size == 0) throw InvalidInput("coalition sizes must be positive");
    }
    for (double v : {var_x, var_theta, var_w}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw InvalidInput("variances must be finite and nonnegative");
        }
    }
    if (samples == 0) throw InvalidInput("samples must be positive");
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      engine_(splitmix64(seed ^ splitmix64(stream_id ^ 0x5851f42d4c957f2dULL))) {}

double RngStream::normal() { return normal_(engine_); }

double RngStream::uniform() { return uniform_(engine_); }

RngStream make_rng(std::uint64_t seed, std::uint64_t stream_id) {
    return RngStream(seed, stream_id);
}

WorldDraw sample_world(const ScenarioConfig& config, RngStream& rng) {
    const std::size_t reports = config.total_reports();
    WorldDraw draw;
    draw.x = scaled(rng.normal(), config.var_x);
    draw.theta.resize(config.n_sensors);
    for (auto& t : draw.theta) t = scaled(rng.normal(), config.var_theta);
    draw.w.resize(reports);
    draw.z.resize(reports);
    for (std::size_t k = 0; k < reports; ++k) {
        draw.z[k] = draw.x + scaled(rng.normal(), config.var_w);
        draw.w[k] = draw.z[k] - draw.x;
    }
    return draw;
}

}  // namespace psense
