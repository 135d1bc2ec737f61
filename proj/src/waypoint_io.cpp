// Copyright 2026 The HillSim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hillsim/waypoint_io.hpp"

#include "hillsim/errors.hpp"
#include "hillsim/file_util.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace hillsim {

namespace {

using nlohmann::json;

constexpr std::string_view kHeader = "k,t,x,y,z";
constexpr std::string_view kFrequencyTag = "# frequency_hz=";

void check_frequency(double f) {
    if (!(f > 0.0) || !std::isfinite(f)) {
        throw SchemaError("waypoint frequency must be positive");
    }
}

}  // namespace

std::string waypoints_to_csv(const WaypointList& wps) {
    std::string out(kFrequencyTag);
    out += format_double(wps.frequency);
    out += '\n';
    out += kHeader;
    out += '\n';
    for (std::size_t k = 0; k < wps.size(); ++k) {
        const Vec3& p = wps.positions[k];
        out += std::to_string(k);
        out += ',';
        out += format_fixed(wps.time(k), 6);
        out += ',';
        out += format_double(p.x());
        out += ',';
        out += format_double(p.y());
        out += ',';
        out += format_double(p.z());
        out += '\n';
    }
    return out;
}

WaypointList waypoints_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    double frequency = 0.0;
    bool have_frequency = false;
    bool have_header = false;
    std::vector<double> times;
    WaypointList wps;
    while (std::getline(in, line)) {
        const std::string_view row = trim(line);
        if (row.empty()) {
            continue;
        }
        if (!have_header) {
            if (row.starts_with(kFrequencyTag)) {
                frequency = parse_double(row.substr(kFrequencyTag.size()), "frequency_hz");
                check_frequency(frequency);
                have_frequency = true;
                continue;
            }
            if (row.starts_with('#')) {
                continue;
            }
            if (row != kHeader) {
                throw SchemaError("waypoint CSV must have header '" + std::string(kHeader) + "'");
            }
            have_header = true;
            continue;
        }
        const auto fields = split(row, ',');
        if (fields.size() != 5) {
            throw SchemaError("waypoint CSV row " + std::to_string(wps.size()) + " has " +
                              std::to_string(fields.size()) + " fields, expected 5");
        }
        const long long k = parse_integer(fields[0], "k");
        if (k != static_cast<long long>(wps.size())) {
            throw SchemaError("waypoint CSV index " + std::to_string(k) + " out of sequence");
        }
        times.push_back(parse_double(fields[1], "t"));
        wps.positions.emplace_back(parse_double(fields[2], "x"), parse_double(fields[3], "y"),
                                   parse_double(fields[4], "z"));
    }
    if (!have_header) {
        throw SchemaError("waypoint CSV is missing its header");
    }
    if (!have_frequency) {
        if (times.size() < 2 || !(times.back() > times.front())) {
            throw SchemaError("waypoint CSV without frequency_hz needs at least two rows");
        }
        const double estimate = static_cast<double>(times.size() - 1) / (times.back() - times.front());
        const double rounded = std::round(estimate);
        frequency = std::abs(estimate - rounded) < 1e-3 * rounded ? rounded : estimate;
        check_frequency(frequency);
    }
    wps.frequency = frequency;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (std::abs(times[k] - wps.time(k)) > 1e-6) {
            throw SchemaError("waypoint CSV t at row " + std::to_string(k) +
                              " disagrees with k / frequency");
        }
    }
    return wps;
}

std::string waypoints_to_json(const WaypointList& wps) {
    json doc = json::object();
    doc["frequency_hz"] = wps.frequency;
    json arr = json::array();
    for (std::size_t k = 0; k < wps.size(); ++k) {
        const Vec3& p = wps.positions[k];
        arr.push_back({{"k", k}, {"t", wps.time(k)}, {"x", p.x()}, {"y", p.y()}, {"z", p.z()}});
    }
    doc["waypoints"] = std::move(arr);
    return doc.dump(1) + "\n";
}

WaypointList waypoints_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed waypoint JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("frequency_hz") || !doc["frequency_hz"].is_number()) {
        throw SchemaError("waypoint JSON is missing numeric field 'frequency_hz'");
    }
    if (!doc.contains("waypoints") || !doc["waypoints"].is_array()) {
        throw SchemaError("waypoint JSON is missing array field 'waypoints'");
    }
    WaypointList wps;
    wps.frequency = doc["frequency_hz"].get<double>();
    check_frequency(wps.frequency);
    const json& arr = doc["waypoints"];
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const json& w = arr[k];
        for (const char* key : {"x", "y", "z"}) {
            if (!w.is_object() || !w.contains(key) || !w[key].is_number()) {
                throw SchemaError("waypoint " + std::to_string(k) + " is missing field '" + key +
                                  "'");
            }
        }
        wps.positions.emplace_back(w["x"].get<double>(), w["y"].get<double>(),
                                   w["z"].get<double>());
    }
    return wps;
}

void write_waypoints(const std::filesystem::path& path, const WaypointList& wps) {
    const std::string ext = path.extension().string();
    if (ext == ".json") {
        write_file_atomic(path, waypoints_to_json(wps));
    } else if (ext == ".csv") {
        write_file_atomic(path, waypoints_to_csv(wps));
    } else {
        throw InputError("waypoint output '" + path.string() + "' must end in .csv or .json");
    }
}

WaypointList read_waypoints(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    return path.extension() == ".json" ? waypoints_from_json(text) : waypoints_from_csv(text);
}

std::string bounds_report(const std::vector<BoundsViolation>& violations) {
    std::string out = "index,axis,value\n";
    for (const auto& v : violations) {
        out += std::to_string(v.index);
        out += ',';
        out += v.axis;
        out += ',';
        out += format_double(v.value);
        out += '\n';
    }
    return out;
}

}  // namespace hillsim
