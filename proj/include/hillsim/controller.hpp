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
 * @file controller.hpp
 * @brief Mellinger-style position/attitude tracking controller.
 *
 * The position loop builds a desired force from PID feedback on position
 * error plus gravity (and, when enabled, reference velocity/acceleration
 * feedforward). The force direction fixes the desired roll and pitch, the
 * reference fixes yaw, and a PD attitude loop turns attitude error into body
 * moments. Outputs are deviations about hover for the linearized plant.
 */

#ifndef HILLSIM_CONTROLLER_HPP
#define HILLSIM_CONTROLLER_HPP

#include "hillsim/kv_config.hpp"
#include "hillsim/linalg.hpp"
#include "hillsim/quadrotor.hpp"

#include <numbers>

namespace hillsim {

struct GainSet {
    Vec3 kp = Vec3::Constant(16.0);  // [1/s^2]
    Vec3 ki = Vec3::Constant(1.0);   // [1/s^3]
    Vec3 kd = Vec3::Constant(8.0);   // [1/s]
    Vec3 ka = Vec3::Ones();          // reference acceleration feedforward [-]
    Vec3 kp_att = Vec3::Constant(3e-3);  // [N m/rad], roll/pitch/yaw
    Vec3 kd_att = Vec3::Constant(4e-4);  // [N m s/rad]
    double integral_clamp = 0.3;  // [m s]
    double thrust_cap = 0.6;      // [N]
    double moment_cap = 5e-3;     // [N m]
    // Use the reference velocity and acceleration carried by the target.
    bool feedforward = true;

    void validate() const;
};

/**
 * Keys: kp_{x,y,z}, ki_{x,y,z}, kd_{x,y,z}, ka_{x,y,z}, kp_att_{x,y,z}, kd_att_{x,y,z},
 * integral_clamp, thrust_cap, moment_cap, feedforward. Missing keys keep
 * their defaults; unknown keys are a SchemaError.
 */
GainSet gains_from_config(const KeyValueConfig& cfg);
KeyValueConfig to_config(const GainSet& gains);

struct ControllerState {
    Vec3 integral = Vec3::Zero();        // [m s]
    Vec3 previous_error = Vec3::Zero();  // [m]

    friend bool operator==(const ControllerState&, const ControllerState&) = default;
};

ControllerState reset(const ControllerState& state);

struct PositionTarget {
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();
    Vec3 acceleration = Vec3::Zero();
};

struct PositionCommand {
    Vec3 force = Vec3::Zero();     // desired force in the world frame [N]
    Vec3 attitude = Vec3::Zero();  // desired roll, pitch, yaw [rad]
    ControllerState state;         // updated accumulators
};

/// Nominal heading: rotated a quarter turn so the propellers face up in the lab.
inline constexpr double kDefaultYawReference = std::numbers::pi / 2.0;

PositionCommand position_control(const DroneState& s, const PositionTarget& target,
                                 double yaw_ref, const GainSet& gains, const DroneParams& params,
                                 const ControllerState& state, double dt);

/// M = kp_att (att_des - att) - kd_att rates per axis, each clamped to the moment cap.
Vec3 attitude_control(const DroneState& s, const Vec3& attitude_des, const GainSet& gains);

/// Projection of the desired force on the current body z axis, clamped to [0, thrust cap].
double collective_thrust(const DroneState& s, const Vec3& force, const GainSet& gains);

struct ControlOutput {
    PlantCommand command;
    double total_thrust = 0.0;  // [N]
    Vec3 attitude_des = Vec3::Zero();
    ControllerState state;
};

/// One controller tick: position loop, attitude loop, hover-deviation command.
ControlOutput control_step(const DroneState& s, const PositionTarget& target, double yaw_ref,
                           const GainSet& gains, const DroneParams& params,
                           const ControllerState& state, double dt);

}  // namespace hillsim

#endif  // HILLSIM_CONTROLLER_HPP
