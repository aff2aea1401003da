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
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace psense {

/// Raised when a caller passes arguments outside an operation's domain.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a file cannot be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// World model shared by every simulation.
///
/// Entity i controls coalition_sizes[i] report slots; slots are laid out
/// entity by entity, so entity 0 owns slots [0, c_0), entity 1 owns
/// [c_0, c_0 + c_1), and so on. var_w == 0 is the noiseless regime where
/// every measurement equals the state.
struct ScenarioConfig {
    std::size_t n_sensors = 2;
    std::vector<std::size_t> coalition_sizes = {1, 1};
    double var_x = 1.0;
    double var_theta = 1.0;
    double var_w = 0.1;
    std::uint64_t seed = 0;
    std::size_t samples = 10000;

    /// Singleton coalitions, default variances.
    static ScenarioConfig with_sensors(std::size_t n);

    std::size_t total_reports() const;
    bool noiseless() const { return var_w == 0.0; }

    /// First slot index owned by `entity`.
    std::size_t first_slot(std::size_t entity) const;

    /// Throws InvalidInput when any invariant is violated.
    void validate() const;
};

/// One draw of the state, the private biases and the measurements.
struct WorldDraw {
    double x = 0.0;
    std::vector<double> theta;  // one per entity
    std::vector<double> w;      // one per report slot
    std::vector<double> z;      // z[k] = x + w[k]
};

/// A reproducible stream of variates keyed by (seed, stream_id).
///
/// Streams with the same key always produce the same sequence; the key is
/// mixed before seeding so neighbouring stream ids are decorrelated. The
/// generator state is owned by the value, so a stream must not be shared
/// across threads.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    double normal();
    double uniform();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

RngStream make_rng(std::uint64_t seed, std::uint64_t stream_id);

/// Draws x ~ N(0, var_x), theta_i ~ N(0, var_theta), w_k ~ N(0, var_w).
///
/// Always consumes exactly 1 + n_sensors + total_reports standard normals,
/// in that order, so that degenerate variances do not shift later draws.
/// w is stored as z - x, which keeps z[k] - x - w[k] == 0 exact.
WorldDraw sample_world(const ScenarioConfig& config, RngStream& rng);

}  // namespace psense
