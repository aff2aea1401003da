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

#include "psense/experiments.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

#include "psense/policies.hpp"

namespace psense {
namespace {

void validate_n_list(std::span<const std::size_t> n_list, bool increasing) {
    if (n_list.empty()) throw InvalidInput("n list must not be empty");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const std::size_t n = n_list[i];
        if (n < 3 || n % 2 == 0) {
            throw InvalidInput("n = " + std::to_string(n) +
                               " must be odd and at least 3; an even report count can be made "
                               "odd by dropping one report or adding one extreme report");
        }
        if (increasing && i > 0 && n <= n_list[i - 1]) {
            throw InvalidInput("n list must be strictly increasing");
        }
    }
}

ScenarioConfig equilibrium_config(std::size_t n, std::uint64_t seed,
                                  const WorldVariances& variances) {
    auto config = ScenarioConfig::with_sensors(n);
    config.var_x = variances.x;
    config.var_theta = variances.theta;
    config.var_w = variances.w;
    config.seed = seed;
    return config;
}

std::string format_real(double v, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, v);
    return buffer;
}

std::string format_fixed(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.2f", v);
    return buffer;
}

int kind_rank(const EstimatorSpec& e) {
    switch (e.kind) {
        case EstimatorSpec::Kind::Mean:
            return 0;
        case EstimatorSpec::Kind::Median:
            return 1;
        case EstimatorSpec::Kind::Trimmed:
            return 2;
    }
    return 3;
}

const char* stroke_for(const EstimatorSpec& e) {
    switch (e.kind) {
        case EstimatorSpec::Kind::Mean:
            return "red";
        case EstimatorSpec::Kind::Median:
            return "blue";
        case EstimatorSpec::Kind::Trimmed:
            return "gray";
    }
    return "black";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::vector<std::size_t> parse_n_list(std::string_view text) {
    std::vector<std::string_view> tokens;
    while (true) {
        const auto comma = text.find(',');
        tokens.push_back(text.substr(0, comma));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    auto parse_one = [](std::string_view token) {
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
            throw InvalidInput("bad entry '" + std::string(token) + "' in n list");
        }
        return value;
    };
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] != "...") {
            out.push_back(parse_one(tokens[i]));
            continue;
        }
        if (out.size() < 2 || i + 1 >= tokens.size() || tokens[i + 1] == "...") {
            throw InvalidInput("'...' needs two values before it and one after it");
        }
        const std::size_t prev = out[out.size() - 1];
        const std::size_t before = out[out.size() - 2];
        const std::size_t last = parse_one(tokens[i + 1]);
        if (prev <= before || last <= prev || (last - prev) % (prev - before) != 0) {
            throw InvalidInput("'...' must continue an increasing arithmetic progression");
        }
        for (std::size_t v = prev + (prev - before); v < last; v += prev - before) out.push_back(v);
    }
    return out;
}

std::vector<CurvePoint> figure1_experiment(std::span<const std::size_t> n_list,
                                           std::size_t samples, std::uint64_t seed,
                                           const WorldVariances& variances) {
    validate_n_list(n_list, false);
    const std::array<EstimatorSpec, 2> estimators = {EstimatorSpec::mean(),
                                                     EstimatorSpec::median()};
    std::vector<CurvePoint> points;
    for (std::size_t n : n_list) {
        const auto config = equilibrium_config(n, seed, variances);
        const auto errors = estimator_errors(
            config, PolicyProfile::uniform(n, noisy_equilibrium()), estimators, samples);
        for (std::size_t e = 0; e < estimators.size(); ++e) {
            points.push_back({n, estimators[e], errors[e], seed});
        }
    }
    sort_curve_points(points);
    return points;
}

std::vector<CurvePoint> consistency_experiment(std::span<const std::size_t> n_list,
                                               std::size_t samples, std::uint64_t seed,
                                               const WorldVariances& variances) {
    validate_n_list(n_list, true);
    std::vector<CurvePoint> points;
    for (std::size_t n : n_list) {
        const auto config = equilibrium_config(n, seed, variances);
        points.push_back({n, EstimatorSpec::median(),
                          estimator_error(config, PolicyProfile::uniform(n, noisy_equilibrium()),
                                          EstimatorSpec::median(), samples),
                          seed});
    }
    return points;
}

void sort_curve_points(std::vector<CurvePoint>& points) {
    std::stable_sort(points.begin(), points.end(), [](const CurvePoint& l, const CurvePoint& r) {
        return std::tuple(l.n, kind_rank(l.estimator), l.estimator.level) <
               std::tuple(r.n, kind_rank(r.estimator), r.estimator.level);
    });
}

std::string curves_csv(std::vector<CurvePoint> points) {
    sort_curve_points(points);
    std::string out = "n,estimator,error_mean,error_ci_half_width,samples,seed\n";
    for (const auto& p : points) {
        out += std::to_string(p.n) + "," + p.estimator.to_string() + "," +
               format_real(p.error.mean, 17) + "," + format_real(p.error.half_width_95, 17) + "," +
               std::to_string(p.error.samples) + "," + std::to_string(p.seed) + "\n";
    }
    return out;
}

void write_curves_csv(const std::vector<CurvePoint>& points, const std::filesystem::path& path) {
    write_text(path, curves_csv(points));
}

std::string curves_svg(std::vector<CurvePoint> points) {
    if (points.empty()) throw InvalidInput("cannot plot an empty set of curve points");
    sort_curve_points(points);

    constexpr double width = 640, height = 400;
    constexpr double left = 70, right = 20, top = 20, bottom = 50;
    double n_min = static_cast<double>(points.front().n);
    double n_max = static_cast<double>(points.back().n);
    if (n_max == n_min) {
        n_min -= 1;
        n_max += 1;
    }
    double e_max = 0.0;
    for (const auto& p : points) e_max = std::max(e_max, p.error.mean);
    if (e_max <= 0.0) e_max = 1.0;
    e_max *= 1.1;

    auto px = [&](double n) { return left + (n - n_min) / (n_max - n_min) * (width - left - right); };
    auto py = [&](double e) { return height - bottom - e / e_max * (height - top - bottom); };

    std::map<std::string, std::vector<const CurvePoint*>> series;
    for (const auto& p : points) series[p.estimator.to_string()].push_back(&p);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
           "viewBox=\"0 0 640 400\">\n";
    svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    svg += "<line x1=\"" + format_fixed(left) + "\" y1=\"" + format_fixed(height - bottom) +
           "\" x2=\"" + format_fixed(width - right) + "\" y2=\"" + format_fixed(height - bottom) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + format_fixed(left) + "\" y1=\"" + format_fixed(top) + "\" x2=\"" +
           format_fixed(left) + "\" y2=\"" + format_fixed(height - bottom) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"355\" y=\"390\" font-size=\"14\" text-anchor=\"middle\">n</text>\n";
    svg += "<text x=\"18\" y=\"190\" font-size=\"14\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 190)\">E|x - estimate|</text>\n";
    svg += "<text x=\"" + format_fixed(left) + "\" y=\"370\" font-size=\"11\" "
           "text-anchor=\"middle\">" + format_real(n_min, 6) + "</text>\n";
    svg += "<text x=\"" + format_fixed(width - right) + "\" y=\"370\" font-size=\"11\" "
           "text-anchor=\"middle\">" + format_real(n_max, 6) + "</text>\n";
    svg += "<text x=\"" + format_fixed(left - 6) + "\" y=\"" + format_fixed(top + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + format_real(e_max, 4) + "</text>\n";
    svg += "<text x=\"" + format_fixed(left - 6) + "\" y=\"" + format_fixed(height - bottom) +
           "\" font-size=\"11\" text-anchor=\"end\">0</text>\n";

    double legend_y = top + 14;
    for (const auto& [name, curve] : series) {
        const char* stroke = stroke_for(curve.front()->estimator);
        std::string coords;
        for (const auto* p : curve) {
            if (!coords.empty()) coords += ' ';
            coords += format_fixed(px(static_cast<double>(p->n))) + "," +
                      format_fixed(py(p->error.mean));
        }
        svg += "<polyline data-estimator=\"" + name + "\" fill=\"none\" stroke=\"" + stroke +
               "\" stroke-width=\"2\" points=\"" + coords + "\"/>\n";
        svg += "<text x=\"" + format_fixed(width - right - 10) + "\" y=\"" +
               format_fixed(legend_y) + "\" font-size=\"12\" text-anchor=\"end\" fill=\"" +
               stroke + "\">" + name + "</text>\n";
        legend_y += 16;
    }
    svg += "</svg>\n";
    return svg;
}

void render_curves_svg(const std::vector<CurvePoint>& points, const std::filesystem::path& path) {
    write_text(path, curves_svg(points));
}

}  // namespace psense
