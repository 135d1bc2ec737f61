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

#ifndef HILLSIM_SIMULATION_HPP
#define HILLSIM_SIMULATION_HPP

#include "hillsim/controller.hpp"
#include "hillsim/quadrotor.hpp"
#include "hillsim/scaling.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hillsim {

struct SimConfig {
    double control_rate = 48.0;   // [Hz]
    double physics_rate = 240.0;  // [Hz], integer multiple of control_rate
    double duration = 0.0;        // [s]; 0 runs for the waypoint list's span
    double yaw_reference = kDefaultYawReference;
    // Defaults to hover at the first waypoint with attitude (0, 0, yaw_reference).
    std::optional<DroneState> initial_state;
    LabVolume volume;
    bool force_bounds = false;  // simulate even if waypoints leave the volume

    void validate() const;
    std::size_t substeps() const;
};

struct SimStep {
    double time = 0.0;
    Vec3 waypoint = Vec3::Zero();
    DroneState state;  // at `time`, before the command acts
    PlantCommand command;
    double total_thrust = 0.0;

    friend bool operator==(const SimStep&, const SimStep&) = default;
};

struct SimLog {
    double control_rate = 48.0;
    std::vector<SimStep> steps;

    std::size_t size() const { return steps.size(); }
    bool empty() const { return steps.empty(); }
    friend bool operator==(const SimLog&, const SimLog&) = default;
};

struct TrackingMetrics {
    Vec3 rms = Vec3::Zero();
    Vec3 max = Vec3::Zero();
    double final_error = 0.0;
};

/// Central-difference velocity and acceleration of the waypoint stream.
std::vector<PositionTarget> reference_targets(const WaypointList& wps);

/**
 * Closed-loop waypoint tracking.
 *
 * Each control tick consumes one waypoint (the last is held if the run is
 * longer than the list), computes a command and advances the plant by
 * physics_rate / control_rate RK4 substeps.
 *
 * Throws InputError for an empty list, ConfigError when the list frequency
 * differs from the control rate, BoundsError for out-of-volume waypoints
 * unless force_bounds is set.
 */
SimLog run_tracking(const WaypointList& wps, const DroneParams& params, const GainSet& gains,
                    const SimConfig& cfg);

struct SwarmMember {
    std::string uri;
    WaypointList waypoints;
    GainSet gains;
    DroneParams params;
};

using SwarmAssignment = std::vector<SwarmMember>;

/// Independent simulations keyed by URI; throws AssignmentError on duplicate URIs.
std::map<std::string, SimLog> run_swarm(const SwarmAssignment& assignment, const SimConfig& cfg,
                                        bool parallel = true);

TrackingMetrics compute_metrics(const SimLog& log);

// Exports. CSV columns: t,wx,wy,wz,x,y,z,fz,mx,my,mz (fz is the hover deviation).
std::string log_to_csv(const SimLog& log);
std::string log_to_json(const SimLog& log);
std::string metrics_to_json(const TrackingMetrics& metrics);
/// Waypoint/position column pairs per axis: t,wx,x,wy,y,wz,z.
std::string plot_data_csv(const SimLog& log);

void write_log(const std::filesystem::path& path, const SimLog& log);

}  // namespace hillsim

#endif  // HILLSIM_SIMULATION_HPP
