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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "psense/core.hpp"
#include "psense/estimators.hpp"

using namespace psense;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> random_reports(std::mt19937_64& gen, std::size_t m) {
    std::normal_distribution<double> normal(0.0, 3.0);
    std::vector<double> v(m);
    for (auto& x : v) x = normal(gen);
    return v;
}

}  // namespace

TEST_CASE("mean_estimate") {
    CHECK(mean_estimate(std::vector{1.0, 2.0, 3.0}) == 2.0);
    CHECK(mean_estimate(std::vector(9, 3.7)) == 3.7);
    // one deviator among four reports moves the average by (y - x) / n
    CHECK(mean_estimate(std::vector{1.0, 1.0, 1.0, 3.0}) == 1.5);
    CHECK_THROWS_AS(mean_estimate(std::vector<double>{}), InvalidInput);
}

TEST_CASE("trimmed_estimate") {
    CHECK(trimmed_estimate(std::vector{0.0, 0.0, 0.0, 100.0}, 1) == 0.0);
    CHECK(trimmed_estimate(std::vector{2.0, 2.0, 2.0, 2.0, 100.0}, 1) == 2.0);
    CHECK(trimmed_estimate(std::vector{5.0, 1.0, 9.0, 3.0, 7.0}, 2) == 5.0);
    CHECK(trimmed_estimate(std::vector{5.0, 1.0, 9.0, 3.0, 7.0}, 2) ==
          oracle::brute_trimmed_mean({5.0, 1.0, 9.0, 3.0, 7.0}, 2));
}

TEST_CASE("trimmed_estimate rejects infeasible levels and names m and level") {
    try {
        trimmed_estimate(std::vector{1.0, 2.0, 3.0, 4.0}, 2);
        FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
        const std::string msg = e.what();
        CHECK(msg.find("level 2") != std::string::npos);
        CHECK(msg.find("m = 4") != std::string::npos);
    }
}

TEST_CASE("median_estimate") {
    CHECK(median_estimate(std::vector{3.0, 1.0, 2.0}) == 2.0);
    CHECK(median_estimate(std::vector{1.0, 2.0, 3.0, 4.0}) == 2.5);
    CHECK(median_estimate(std::vector{0.0, 0.0, 0.0, 0.0, 10.0, 10.0}) == 0.0);
    CHECK(median_estimate(std::vector{4.0}) == 4.0);
    CHECK_THROWS_AS(median_estimate(std::vector<double>{}), InvalidInput);
}

TEST_CASE("trim_level_for_median") {
    CHECK(trim_level_for_median(7) == 3);
    CHECK(trim_level_for_median(8) == 3);
    CHECK(trim_level_for_median(2) == 0);
    CHECK_THROWS_AS(trim_level_for_median(1), InvalidInput);
}

TEST_CASE("non-finite reports") {
    CHECK_THROWS_AS(median_estimate(std::vector{1.0, std::nan(""), 2.0}), InvalidInput);
    CHECK_THROWS_AS(mean_estimate(std::vector{std::nan("")}), InvalidInput);
    CHECK(trimmed_estimate(std::vector{kInf, 1.0, 1.0, -kInf, 1.0}, 1) == 1.0);
    CHECK(median_estimate(std::vector{kInf, 2.0, -kInf}) == 2.0);
    CHECK(mean_estimate(std::vector{kInf, 2.0}) == kInf);
}

TEST_CASE("estimator spec parsing and dispatch") {
    CHECK(parse_estimator("mean") == EstimatorSpec::mean());
    CHECK(parse_estimator("median") == EstimatorSpec::median());
    CHECK(parse_estimator("trimmed:3") == EstimatorSpec::trimmed(3));
    CHECK(parse_estimator("trimmed:3").to_string() == "trimmed:3");
    CHECK_THROWS_AS(parse_estimator("trimmed:"), InvalidInput);
    CHECK_THROWS_AS(parse_estimator("trimmed:x"), InvalidInput);
    CHECK_THROWS_AS(parse_estimator("mode"), InvalidInput);
    CHECK(EstimatorSpec::median().trim_level(11) == 5);
    CHECK(estimate(EstimatorSpec::trimmed(1), std::vector{9.0, 1.0, 5.0}) == 5.0);
}

TEST_CASE("permutation invariance and translation equivariance") {
    std::mt19937_64 gen(7);
    const std::vector<EstimatorSpec> specs = {EstimatorSpec::mean(), EstimatorSpec::trimmed(2),
                                              EstimatorSpec::median()};
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t m = 5 + trial % 17;
        auto reports = random_reports(gen, m);
        auto shuffled = reports;
        std::shuffle(shuffled.begin(), shuffled.end(), gen);
        const double shift = std::normal_distribution<double>(0.0, 50.0)(gen);
        auto shifted = reports;
        for (auto& y : shifted) y += shift;
        for (const auto& spec : specs) {
            const double base = estimate(spec, reports);
            CHECK(estimate(spec, shuffled) == base);
            CHECK(estimate(spec, shifted) == doctest::Approx(base + shift).epsilon(1e-12).scale(100.0));
        }
    }
}

TEST_CASE("trimmed estimate survives up to level arbitrary replacements") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> wild(-1e12, 1e12);
    for (std::size_t m = 3; m <= 15; ++m) {
        for (std::size_t level = 1; 2 * level + 1 <= m; ++level) {
            for (int trial = 0; trial < 40; ++trial) {
                const double x = wild(gen) * 1e-9;
                std::vector<double> reports(m, x);
                std::vector<std::size_t> slots(m);
                for (std::size_t i = 0; i < m; ++i) slots[i] = i;
                std::shuffle(slots.begin(), slots.end(), gen);
                const std::size_t corrupted = trial % (level + 1);
                for (std::size_t i = 0; i < corrupted; ++i) {
                    reports[slots[i]] = trial % 5 == 0 ? (i % 2 ? kInf : -kInf) : wild(gen);
                }
                CHECK(trimmed_estimate(reports, level) == x);
            }
        }
    }
}

TEST_CASE("median coincides with the trimmed mean at the median trim level") {
    std::mt19937_64 gen(3);
    for (std::size_t m = 2; m <= 25; ++m) {
        for (int trial = 0; trial < 200; ++trial) {
            const auto reports = random_reports(gen, m);
            const double med = median_estimate(reports);
            CHECK(std::abs(trimmed_estimate(reports, trim_level_for_median(m)) - med) < 1e-12);
            CHECK(med == doctest::Approx(oracle::brute_median(reports)).epsilon(1e-12));
        }
    }
}

TEST_CASE("level zero trimming is the mean, bitwise") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 500; ++trial) {
        const auto reports = random_reports(gen, 1 + trial % 30);
        CHECK(trimmed_estimate(reports, 0) == mean_estimate(reports));
        CHECK(mean_estimate(reports) ==
              doctest::Approx(oracle::brute_trimmed_mean(reports, 0)).epsilon(1e-12).scale(10.0));
    }
}
