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

#ifndef HILLSIM_WAYPOINT_IO_HPP
#define HILLSIM_WAYPOINT_IO_HPP

#include "hillsim/scaling.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace hillsim {

/**
 * Waypoint CSV:
 *
 *   # frequency_hz=48
 *   k,t,x,y,z
 *   0,0.000000,0.2,0.077896,1
 *
 * t is informational (6 decimals); positions use shortest round-trip text so a
 * write/read cycle reproduces the list bit for bit. Without the frequency
 * comment the rate is inferred from the t column.
 */
std::string waypoints_to_csv(const WaypointList& wps);
WaypointList waypoints_from_csv(std::string_view text);

// {"frequency_hz": 48, "waypoints": [{"k": 0, "t": 0, "x": .., "y": .., "z": ..}, ...]}
std::string waypoints_to_json(const WaypointList& wps);
WaypointList waypoints_from_json(std::string_view text);

void write_waypoints(const std::filesystem::path& path, const WaypointList& wps);
WaypointList read_waypoints(const std::filesystem::path& path);

/// One line per violation: `index,axis,value`, preceded by a header.
std::string bounds_report(const std::vector<BoundsViolation>& violations);

}  // namespace hillsim

#endif  // HILLSIM_WAYPOINT_IO_HPP
