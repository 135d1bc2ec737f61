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

#ifndef HILLSIM_TRAJECTORY_IO_HPP
#define HILLSIM_TRAJECTORY_IO_HPP

#include "hillsim/cw_dynamics.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace hillsim {

/// Version written into, and required from, trajectory record documents.
inline constexpr int kTrajectoryRecordSchemaVersion = 1;

// CSV: header `t,x,y,z,vx,vy,vz,frame`, one row per sample.
std::string trajectory_to_csv(const SampledTrajectory& traj);
SampledTrajectory trajectory_from_csv(std::string_view text);

// JSON records: an array of objects with the CSV column names as keys.
std::string trajectory_to_json_records(const SampledTrajectory& traj);
SampledTrajectory trajectory_from_json_records(std::string_view text);

/**
 * Trajectory record document:
 *
 *   {"schema_version": 1, "frame": "space",
 *    "units": {"time": "s", "position": "m", "velocity": "m/s"},
 *    "times": [t0, t1, ...], "states": [[x, y, z, vx, vy, vz], ...]}
 *
 * Missing fields, unequal lengths, rows that are not 6 wide and times that do
 * not strictly increase are SchemaErrors naming the offending field or index.
 */
std::string trajectory_to_record(const SampledTrajectory& traj);
SampledTrajectory trajectory_from_record(std::string_view text);

/// `.csv` selects CSV, `.json` selects JSON records.
void write_trajectory(const std::filesystem::path& path, const SampledTrajectory& traj);

/// Reads CSV, JSON records, or a trajectory record (a JSON object with `times`).
SampledTrajectory read_trajectory(const std::filesystem::path& path);

}  // namespace hillsim

#endif  // HILLSIM_TRAJECTORY_IO_HPP
