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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "psense/core.hpp"

using namespace psense;

TEST_CASE("make_rng is deterministic per key") {
    auto a = make_rng(42, 0);
    auto b = make_rng(42, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
}

TEST_CASE("distinct stream ids give distinct sequences") {
    auto a = make_rng(42, 0);
    auto b = make_rng(42, 1);
    int equal = 0;
    for (int i = 0; i < 100; ++i) equal += a.normal() == b.normal();
    CHECK(equal == 0);
}

TEST_CASE("stream content does not depend on creation order") {
    std::vector<double> after;
    {
        auto s3 = make_rng(42, 3);
        for (int i = 0; i < 10; ++i) s3.normal();
        auto s7 = make_rng(42, 7);
        for (int i = 0; i < 20; ++i) after.push_back(s7.normal());
    }
    auto s7 = make_rng(42, 7);
    std::vector<double> before;
    for (int i = 0; i < 20; ++i) before.push_back(s7.normal());
    auto s3 = make_rng(42, 3);
    s3.normal();
    CHECK(before == after);
}

TEST_CASE("degenerate variances give an all-zero world") {
    auto config = ScenarioConfig::with_sensors(4);
    config.var_x = config.var_theta = config.var_w = 0.0;
    auto rng = make_rng(1, 0);
    const auto world = sample_world(config, rng);
    CHECK(world.x == 0.0);
    for (double t : world.theta) CHECK(t == 0.0);
    for (double z : world.z) CHECK(z == 0.0);
}

TEST_CASE("noiseless regime measures the state exactly") {
    auto config = ScenarioConfig::with_sensors(5);
    config.var_w = 0.0;
    for (std::uint64_t r = 0; r < 50; ++r) {
        auto rng = make_rng(9, r);
        const auto world = sample_world(config, rng);
        for (double z : world.z) CHECK(z == world.x);
    }
}

TEST_CASE("measurements decompose exactly into state plus noise") {
    auto config = ScenarioConfig::with_sensors(3);
    config.coalition_sizes = {2, 1, 3};
    config.var_x = 1e6;
    config.var_w = 1e-12;
    for (std::uint64_t r = 0; r < 200; ++r) {
        auto rng = make_rng(5, r);
        const auto world = sample_world(config, rng);
        REQUIRE(world.z.size() == 6);
        REQUIRE(world.theta.size() == 3);
        for (std::size_t k = 0; k < world.z.size(); ++k) CHECK(world.z[k] - world.x - world.w[k] == 0.0);
    }
}

TEST_CASE("sample moments match the configured variances") {
    auto config = ScenarioConfig::with_sensors(2);
    config.var_x = 1.0;
    config.var_theta = 1.0;
    config.var_w = 0.1;
    const int draws = 100000;
    double sx = 0, sxx = 0, st = 0, stt = 0, sw = 0, sww = 0, sxt = 0;
    for (int r = 0; r < draws; ++r) {
        auto rng = make_rng(2024, r);
        const auto world = sample_world(config, rng);
        sx += world.x;
        sxx += world.x * world.x;
        st += world.theta[0];
        stt += world.theta[0] * world.theta[0];
        sw += world.w[0];
        sww += world.w[0] * world.w[0];
        sxt += world.x * world.theta[0];
    }
    const double n = draws;
    auto check_moments = [&](double s, double ss, double var) {
        const double mean = s / n;
        const double v = ss / n - mean * mean;
        CHECK(std::abs(mean) < 3.0 * std::sqrt(var / n));
        // standard error of a Gaussian sample variance is var * sqrt(2 / n)
        CHECK(std::abs(v - var) < 3.0 * var * std::sqrt(2.0 / n));
    };
    check_moments(sx, sxx, 1.0);
    check_moments(st, stt, 1.0);
    check_moments(sw, sww, 0.1);
    const double corr = (sxt / n - (sx / n) * (st / n)) /
                        std::sqrt((sxx / n - sx * sx / (n * n)) * (stt / n - st * st / (n * n)));
    CHECK(std::abs(corr) < 0.02);
}

TEST_CASE("scenario validation") {
    auto config = ScenarioConfig::with_sensors(3);
    CHECK_NOTHROW(config.validate());
    CHECK(config.total_reports() == 3);

    auto one = ScenarioConfig::with_sensors(1);
    CHECK_THROWS_AS(one.validate(), InvalidInput);

    auto negative = config;
    negative.var_theta = -1.0;
    CHECK_THROWS_AS(negative.validate(), InvalidInput);

    auto mismatched = config;
    mismatched.coalition_sizes = {1, 1};
    CHECK_THROWS_AS(mismatched.validate(), InvalidInput);

    auto empty_coalition = config;
    empty_coalition.coalition_sizes = {1, 0, 1};
    CHECK_THROWS_AS(empty_coalition.validate(), InvalidInput);

    auto coalitions = config;
    coalitions.coalition_sizes = {2, 1, 3};
    CHECK(coalitions.total_reports() == 6);
    CHECK(coalitions.first_slot(2) == 3);
}

TEST_CASE("oracle sanity against independent reference values") {
    CHECK(oracle::expected_abs_normal(1.0) == doctest::Approx(0.7978845608028654).epsilon(1e-12));
    CHECK(oracle::expected_abs_sample_median(11, 1.1) ==
          doctest::Approx(0.30966076103338036).epsilon(1e-9));
    CHECK(oracle::expected_abs_sample_median(401, 1.1) ==
          doctest::Approx(0.05234543406043472).epsilon(1e-8));
}
