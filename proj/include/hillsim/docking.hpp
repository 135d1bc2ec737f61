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

/**
 * @file docking.hpp
 * @brief Closed-loop thrust policies over Clohessy-Wiltshire dynamics.
 *
 * A ThrustPolicy maps the deputy's Hill state to a thrust command; trained
 * controllers plug in through the same interface as the reference PD policy.
 * Pre-recorded trajectories enter through trajectory records instead.
 */

#ifndef HILLSIM_DOCKING_HPP
#define HILLSIM_DOCKING_HPP

#include "hillsim/cw_dynamics.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hillsim {

struct ThrustPolicy {
    std::string name;
    std::function<ControlThrust(const HillState&)> law;
    double thrust_cap = 1.0;  // [N], enforced by the runner
};

ThrustPolicy zero_policy(double thrust_cap = 1.0);

struct PdDockingGains {
    double kp = 1.0;  // [1/s^2]
    double kd = 2.0;  // [1/s]
    double thrust_cap = 100.0;  // [N]
};

/// u = -m (kp * position + kd * velocity), driving the deputy to the chief.
ThrustPolicy pd_docking_policy(const OrbitalContext& ctx, const PdDockingGains& gains = {});

struct DockingConfig {
    double horizon = 10.0;         // [s]
    double dt = 0.1;               // [s]
    double success_radius = 0.5;   // [m]
    double v_max = 0.2;            // [m/s]
    // Enables the distance-dependent limit v_max + slope * |r| [1/s].
    std::optional<double> distance_slope;
    double shell_inner = 50.0;     // [m]
    double shell_outer = 150.0;    // [m]
    double velocity_box = 1.0;     // [m/s], half-width of the unconstrained velocity draw
    std::uint64_t seed = 0;

    void validate() const;
    std::size_t steps() const;
    double speed_limit(double distance) const;
};

struct EpisodeSummary {
    bool success = false;
    std::optional<double> time_to_dock;  // first sample inside the success radius [s]
    double fuel = 0.0;                   // sum |u| dt [N s]
    double final_distance = 0.0;         // [m]
    std::size_t steps = 0;
};

struct Episode {
    SampledTrajectory trajectory;          // steps + 1 samples, space frame
    std::vector<ControlThrust> thrusts;    // clamped command held over each step
    EpisodeSummary summary;
};

/**
 * Runs the policy in the loop: thrust = clamp(policy(state), cap), held for
 * one step of the oracle zero-order-hold transition.
 *
 * Throws PolicyError at the first non-finite policy output.
 */
Episode run_closed_loop(const ThrustPolicy& policy, const HillState& ic,
                        const OrbitalContext& ctx, const DockingConfig& cfg);

/// The reference docking start: 100 m radial offset with vy = -0.2 n x.
HillState reference_docking_state(const OrbitalContext& ctx);

/**
 * Seeded initial conditions inside the velocity safety limit.
 *
 * Positions are uniform in the volume of the [shell_inner, shell_outer]
 * shell; velocities are drawn uniformly from the velocity box and redrawn
 * until the speed limit holds.
 */
class SafeInitializer {
public:
    SafeInitializer(const DockingConfig& cfg, const OrbitalContext& ctx);
    HillState next();

private:
    double uniform();

    DockingConfig cfg_;
    std::mt19937_64 rng_;
};

HillState safe_random_initial_state(const DockingConfig& cfg, const OrbitalContext& ctx);

SampledTrajectory load_trajectory_record(const std::filesystem::path& path);
void save_trajectory_record(const std::filesystem::path& path, const SampledTrajectory& traj);

std::string summary_to_json(const EpisodeSummary& summary);

}  // namespace hillsim

#endif  // HILLSIM_DOCKING_HPP
