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

#ifndef HILLSIM_SCALING_HPP
#define HILLSIM_SCALING_HPP

#include "hillsim/cw_dynamics.hpp"

#include <cstddef>
#include <vector>

namespace hillsim {

/**
 * @brief Space-to-lab conversion factors.
 *
 * Distances are divided by `distance_factor`; `source_span` seconds of space
 * time are compressed into `sim_duration` seconds of flight.
 */
struct ScaleConfig {
    double distance_factor = 4000.0;
    double sim_duration = 10.0;  // [s]
    double source_span = 1.0;    // [s]

    double time_factor() const { return source_span / sim_duration; }
    void validate() const;
};

/// Flight volume centred on the lab origin in x/y, floor at z = 0.
struct LabVolume {
    double x_extent = 4.0;  // [m]
    double y_extent = 3.0;
    double z_extent = 2.5;
    double z_offset = 1.0;  // altitude of the Hill-frame origin (the chief)

    void validate() const;
};

/// Lab-frame position setpoints at a fixed rate; waypoint k is due at k / frequency.
struct WaypointList {
    double frequency = 48.0;  // [Hz]
    std::vector<Vec3> positions;

    std::size_t size() const { return positions.size(); }
    bool empty() const { return positions.empty(); }
    double time(std::size_t k) const { return static_cast<double>(k) / frequency; }
};

struct BoundsViolation {
    std::size_t index = 0;
    char axis = 'x';
    double value = 0.0;
};

/// round(frequency * duration), the number of setpoints a run consumes.
std::size_t waypoint_count(double frequency, double duration);

SampledTrajectory scale_to_lab(const SampledTrajectory& traj, const ScaleConfig& cfg,
                               const LabVolume& vol);

/// Inverse of scale_to_lab.
SampledTrajectory unscale_to_space(const SampledTrajectory& traj, const ScaleConfig& cfg,
                                   const LabVolume& vol);

/**
 * Linear interpolation of lab positions at k / frequency, k < round(frequency * duration).
 *
 * Throws CoverageError when [0, duration] is not inside the trajectory span.
 */
WaypointList resample_waypoints(const SampledTrajectory& traj, double frequency, double duration);

/// Empty when every waypoint lies in the volume: |x| <= x/2, |y| <= y/2, 0 <= z <= z_extent.
std::vector<BoundsViolation> check_bounds(const WaypointList& wps, const LabVolume& vol);

}  // namespace hillsim

#endif  // HILLSIM_SCALING_HPP
