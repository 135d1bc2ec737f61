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
 * @file quadrotor.hpp
 * @brief Linearized Crazyflie 2.1 surrogate about hover.
 *
 * The plant is four decoupled linear subsystems driven by force/moment
 * deviations from hover:
 *
 *   vertical      [w, z]          w' = dFz / m,           z' = w
 *   yaw           [r, psi]        r' = Mz / Izz,          psi' = r
 *   lateral       [p, phi, v, y]  p' = Mx / Ixx, phi' = p, v' = -g phi, y' = v
 *   longitudinal  [q, theta, u, x] q' = My / Iyy, theta' = q, u' = g theta, x' = u
 */

#ifndef HILLSIM_QUADROTOR_HPP
#define HILLSIM_QUADROTOR_HPP

#include "hillsim/kv_config.hpp"
#include "hillsim/linalg.hpp"

#include <string>

namespace hillsim {

struct DroneParams {
    double mass = 0.027;   // [kg]
    double ixx = 1.4e-5;   // [kg m^2]
    double iyy = 1.4e-5;
    double izz = 2.17e-5;
    double gravity = 9.81;  // [m/s^2]

    double hover_thrust() const { return mass * gravity; }
    void validate() const;
};

/// Keys: mass, ixx, iyy, izz, g. Missing keys keep their defaults.
DroneParams drone_params_from_config(const KeyValueConfig& cfg);
KeyValueConfig to_config(const DroneParams& params);

struct DroneState {
    Vec3 position = Vec3::Zero();  // x, y, z [m]
    Vec3 velocity = Vec3::Zero();  // u, v, w [m/s]
    Vec3 attitude = Vec3::Zero();  // roll phi, pitch theta, yaw psi [rad]
    Vec3 rates = Vec3::Zero();     // p, q, r [rad/s]

    bool is_finite() const;
    friend bool operator==(const DroneState&, const DroneState&) = default;
};

/// Deviations about hover: collective force and body moments.
struct PlantCommand {
    double thrust_delta = 0.0;      // dFz [N]
    Vec3 moment = Vec3::Zero();     // Mx, My, Mz [N m]

    friend bool operator==(const PlantCommand&, const PlantCommand&) = default;
};

template <int N>
struct LinearSubsystem {
    Eigen::Matrix<double, N, N> A = Eigen::Matrix<double, N, N>::Zero();
    Eigen::Matrix<double, N, 1> B = Eigen::Matrix<double, N, 1>::Zero();
};

struct PlantModel {
    LinearSubsystem<2> vertical;      // [w, z], input dFz
    LinearSubsystem<2> yaw;           // [r, psi], input Mz
    LinearSubsystem<4> lateral;       // [p, phi, v, y], input Mx
    LinearSubsystem<4> longitudinal;  // [q, theta, u, x], input My
};

PlantModel build_subsystems(const DroneParams& params);

/// Largest step the fixed-step integrator accepts [s].
inline constexpr double kMaxPlantStep = 1.0 / 100.0;

/**
 * Advances every subsystem by one classical RK4 step with the command held.
 *
 * Throws StepSizeError unless 0 < dt <= kMaxPlantStep. Attitude angles are
 * wrapped to (-pi, pi] afterwards.
 */
DroneState step_plant(const PlantModel& model, const DroneState& s, const PlantCommand& cmd,
                      double dt);
DroneState step_plant(const DroneParams& params, const DroneState& s, const PlantCommand& cmd,
                      double dt);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double angle);

inline constexpr double kPwmMax = 65535.0;

/// Motor speed from a PWM command in [0, 65535]; throws std::domain_error outside.
double pwm_to_rpm(double pwm);
/// Inverse of pwm_to_rpm over its image; throws std::domain_error outside.
double rpm_to_pwm(double rpm);

}  // namespace hillsim

#endif  // HILLSIM_QUADROTOR_HPP
