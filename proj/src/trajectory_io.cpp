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

#include "hillsim/trajectory_io.hpp"

#include "hillsim/errors.hpp"
#include "hillsim/file_util.hpp"

#include <json.hpp>

#include <array>
#include <sstream>

namespace hillsim {

namespace {

using nlohmann::json;

constexpr std::string_view kCsvHeader = "t,x,y,z,vx,vy,vz,frame";
constexpr std::array<const char*, 6> kStateKeys = {"x", "y", "z", "vx", "vy", "vz"};

void check_ordering(const SampledTrajectory& traj) {
    if (traj.empty()) {
        throw SchemaError("trajectory has no samples");
    }
    for (std::size_t i = 1; i < traj.times.size(); ++i) {
        if (!(traj.times[i] > traj.times[i - 1])) {
            throw SchemaError("times not strictly increasing at index " + std::to_string(i));
        }
    }
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
}

double number_field(const json& obj, const char* key, std::size_t index) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        throw SchemaError("record " + std::to_string(index) + " is missing numeric field '" +
                          key + "'");
    }
    return it->get<double>();
}

}  // namespace

std::string trajectory_to_csv(const SampledTrajectory& traj) {
    std::string out(kCsvHeader);
    out += '\n';
    const std::string_view frame = to_string(traj.frame);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out += format_double(traj.times[i]);
        for (int c = 0; c < 6; ++c) {
            out += ',';
            out += format_double(traj.states[i].vec[c]);
        }
        out += ',';
        out += frame;
        out += '\n';
    }
    return out;
}

SampledTrajectory trajectory_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || trim(line) != kCsvHeader) {
        throw SchemaError("trajectory CSV must start with header '" + std::string(kCsvHeader) +
                          "'");
    }
    SampledTrajectory traj;
    bool frame_seen = false;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split(trim(line), ',');
        if (fields.size() != 8) {
            throw SchemaError("trajectory CSV row " + std::to_string(row) + " has " +
                              std::to_string(fields.size()) + " fields, expected 8");
        }
        traj.times.push_back(parse_double(fields[0], "t"));
        Vec6 v;
        for (int c = 0; c < 6; ++c) {
            v[c] = parse_double(fields[static_cast<std::size_t>(c) + 1],
                                kStateKeys[static_cast<std::size_t>(c)]);
        }
        traj.states.emplace_back(v);
        const Frame frame = parse_frame(trim(fields[7]));
        if (frame_seen && frame != traj.frame) {
            throw SchemaError("trajectory CSV mixes frames at row " + std::to_string(row));
        }
        traj.frame = frame;
        frame_seen = true;
        ++row;
    }
    check_ordering(traj);
    return traj;
}

std::string trajectory_to_json_records(const SampledTrajectory& traj) {
    json arr = json::array();
    for (std::size_t i = 0; i < traj.size(); ++i) {
        json rec = json::object();
        rec["t"] = traj.times[i];
        for (std::size_t c = 0; c < 6; ++c) {
            rec[kStateKeys[c]] = traj.states[i].vec[static_cast<Eigen::Index>(c)];
        }
        rec["frame"] = std::string(to_string(traj.frame));
        arr.push_back(std::move(rec));
    }
    return arr.dump(1) + "\n";
}

SampledTrajectory trajectory_from_json_records(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_array()) {
        throw SchemaError("trajectory JSON records must be an array");
    }
    SampledTrajectory traj;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const json& rec = doc[i];
        if (!rec.is_object()) {
            throw SchemaError("record " + std::to_string(i) + " is not an object");
        }
        traj.times.push_back(number_field(rec, "t", i));
        Vec6 v;
        for (std::size_t c = 0; c < 6; ++c) {
            v[static_cast<Eigen::Index>(c)] = number_field(rec, kStateKeys[c], i);
        }
        traj.states.emplace_back(v);
        const auto it = rec.find("frame");
        if (it == rec.end() || !it->is_string()) {
            throw SchemaError("record " + std::to_string(i) + " is missing field 'frame'");
        }
        const Frame frame = parse_frame(it->get<std::string>());
        if (i > 0 && frame != traj.frame) {
            throw SchemaError("trajectory records mix frames at index " + std::to_string(i));
        }
        traj.frame = frame;
    }
    check_ordering(traj);
    return traj;
}

std::string trajectory_to_record(const SampledTrajectory& traj) {
    json doc = json::object();
    doc["schema_version"] = kTrajectoryRecordSchemaVersion;
    doc["frame"] = std::string(to_string(traj.frame));
    doc["units"] = {{"time", "s"}, {"position", "m"}, {"velocity", "m/s"}};
    doc["times"] = traj.times;
    json states = json::array();
    for (const HillState& s : traj.states) {
        states.push_back(json::array({s.vec[0], s.vec[1], s.vec[2], s.vec[3], s.vec[4], s.vec[5]}));
    }
    doc["states"] = std::move(states);
    return doc.dump(1) + "\n";
}

SampledTrajectory trajectory_from_record(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) {
        throw SchemaError("trajectory record must be a JSON object");
    }
    if (const auto it = doc.find("schema_version"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<int>() != kTrajectoryRecordSchemaVersion) {
            throw SchemaError("unsupported trajectory record schema_version " + it->dump());
        }
    }
    const auto times = doc.find("times");
    if (times == doc.end() || !times->is_array()) {
        throw SchemaError("trajectory record is missing field 'times'");
    }
    const auto states = doc.find("states");
    if (states == doc.end() || !states->is_array()) {
        throw SchemaError("trajectory record is missing field 'states'");
    }
    if (times->size() != states->size()) {
        throw SchemaError("trajectory record length mismatch: " + std::to_string(times->size()) +
                          " times vs " + std::to_string(states->size()) + " states");
    }
    if (times->empty()) {
        throw SchemaError("trajectory record has no samples");
    }

    SampledTrajectory traj;
    traj.frame = Frame::space;
    if (const auto it = doc.find("frame"); it != doc.end()) {
        if (!it->is_string()) {
            throw SchemaError("trajectory record field 'frame' must be a string");
        }
        traj.frame = parse_frame(it->get<std::string>());
    }
    for (std::size_t i = 0; i < times->size(); ++i) {
        const json& t = (*times)[i];
        if (!t.is_number()) {
            throw SchemaError("times[" + std::to_string(i) + "] is not a number");
        }
        traj.times.push_back(t.get<double>());
        const json& row = (*states)[i];
        if (!row.is_array() || row.size() != 6) {
            throw SchemaError("states[" + std::to_string(i) + "] must have 6 entries");
        }
        Vec6 v;
        for (std::size_t c = 0; c < 6; ++c) {
            if (!row[c].is_number()) {
                throw SchemaError("states[" + std::to_string(i) + "][" + std::to_string(c) +
                                  "] is not a number");
            }
            v[static_cast<Eigen::Index>(c)] = row[c].get<double>();
        }
        traj.states.emplace_back(v);
    }
    check_ordering(traj);
    return traj;
}

void write_trajectory(const std::filesystem::path& path, const SampledTrajectory& traj) {
    const std::string ext = path.extension().string();
    if (ext == ".json") {
        write_file_atomic(path, trajectory_to_json_records(traj));
    } else if (ext == ".csv") {
        write_file_atomic(path, trajectory_to_csv(traj));
    } else {
        throw InputError("trajectory output '" + path.string() + "' must end in .csv or .json");
    }
}

SampledTrajectory read_trajectory(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    if (path.extension() == ".json") {
        const auto first = trim(text).substr(0, 1);
        return first == "{" ? trajectory_from_record(text) : trajectory_from_json_records(text);
    }
    return trajectory_from_csv(text);
}

}  // namespace hillsim
