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

#include "hillsim/controller.hpp"

#include "hillsim/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace hillsim {

namespace {

constexpr std::array<const char*, 3> kAxes = {"x", "y", "z"};

void read_axes(const KeyValueConfig& cfg, const std::string& prefix, Vec3& out) {
    for (std::size_t i = 0; i < 3; ++i) {
        out[static_cast<Eigen::Index>(i)] =
            cfg.get_double_or(prefix + "_" + kAxes[i], out[static_cast<Eigen::Index>(i)]);
    }
}

void write_axes(KeyValueConfig& cfg, const std::string& prefix, const Vec3& v) {
    for (std::size_t i = 0; i < 3; ++i) {
        cfg.set(prefix + "_" + kAxes[i], v[static_cast<Eigen::Index>(i)]);
    }
}

}  // namespace

void GainSet::validate() const {
    const auto non_negative = [](const Vec3& v) { return (v.array() >= 0.0).all() && v.allFinite(); };
    if (!non_negative(kp) || !non_negative(ki) || !non_negative(kd) || !non_negative(ka) ||
        !non_negative(kp_att) || !non_negative(kd_att)) {
        throw ConfigError("controller gains must be non-negative");
    }
    if (!(integral_clamp > 0.0) || !(thrust_cap > 0.0) || !(moment_cap > 0.0)) {
        throw ConfigError("controller clamps and caps must be positive");
    }
}

GainSet gains_from_config(const KeyValueConfig& cfg) {
    std::set<std::string> allowed = {"integral_clamp", "thrust_cap", "moment_cap", "feedforward"};
    for (const char* prefix : {"kp", "ki", "kd", "ka", "kp_att", "kd_att"}) {
        for (const char* axis : kAxes) {
            allowed.insert(std::string(prefix) + "_" + axis);
        }
    }
    cfg.require_known_keys(allowed, "gain");

    GainSet g;
    read_axes(cfg, "kp", g.kp);
    read_axes(cfg, "ki", g.ki);
    read_axes(cfg, "kd", g.kd);
    read_axes(cfg, "ka", g.ka);
    read_axes(cfg, "kp_att", g.kp_att);
    read_axes(cfg, "kd_att", g.kd_att);
    g.integral_clamp = cfg.get_double_or("integral_clamp", g.integral_clamp);
    g.thrust_cap = cfg.get_double_or("thrust_cap", g.thrust_cap);
    g.moment_cap = cfg.get_double_or("moment_cap", g.moment_cap);
    g.feedforward = cfg.get_bool_or("feedforward", g.feedforward);
    g.validate();
    return g;
}

KeyValueConfig to_config(const GainSet& gains) {
    KeyValueConfig cfg;
    write_axes(cfg, "kp", gains.kp);
    write_axes(cfg, "ki", gains.ki);
    write_axes(cfg, "kd", gains.kd);
    write_axes(cfg, "ka", gains.ka);
    write_axes(cfg, "kp_att", gains.kp_att);
    write_axes(cfg, "kd_att", gains.kd_att);
    cfg.set("integral_clamp", gains.integral_clamp);
    cfg.set("thrust_cap", gains.thrust_cap);
    cfg.set("moment_cap", gains.moment_cap);
    cfg.set("feedforward", std::string(gains.feedforward ? "true" : "false"));
    return cfg;
}

ControllerState reset(const ControllerState&) {
    return ControllerState{};
}

PositionCommand position_control(const DroneState& s, const PositionTarget& target,
                                 double yaw_ref, const GainSet& gains, const DroneParams& params,
                                 const ControllerState& state, double dt) {
    if (!(dt > 0.0)) {
        throw InputError("position_control: dt must be positive");
    }
    const Vec3 error = target.position - s.position;

    PositionCommand out;
    out.state.integral = (state.integral + error * dt)
                             .cwiseMax(-gains.integral_clamp)
                             .cwiseMin(gains.integral_clamp);
    out.state.previous_error = error;

    const Vec3 ref_velocity = gains.feedforward ? target.velocity : Vec3::Zero();
    const Vec3 ref_acceleration = gains.feedforward ? target.acceleration : Vec3::Zero();
    const Vec3 velocity_error = ref_velocity - s.velocity;

    const Vec3 accel = gains.kp.cwiseProduct(error) + gains.ki.cwiseProduct(out.state.integral) +
                       gains.kd.cwiseProduct(velocity_error) +
                       gains.ka.cwiseProduct(ref_acceleration);
    Vec3 force = params.mass * accel;
    force.z() += params.hover_thrust();

    const double magnitude = force.norm();
    if (magnitude > gains.thrust_cap) {
        force *= gains.thrust_cap / magnitude;
    }
    out.force = force;

    // The linearized translational coupling (x'' = g theta, y'' = -g phi) does
    // not depend on heading, so the tilt is resolved in the linearization frame.
    if (magnitude > 0.0) {
        out.attitude.x() = std::atan2(-force.y(), std::hypot(force.x(), force.z()));
        out.attitude.y() = std::atan2(force.x(), force.z());
    }
    out.attitude.z() = wrap_angle(yaw_ref);
    return out;
}

Vec3 attitude_control(const DroneState& s, const Vec3& attitude_des, const GainSet& gains) {
    Vec3 moment;
    for (Eigen::Index i = 0; i < 3; ++i) {
        const double err = wrap_angle(attitude_des[i] - s.attitude[i]);
        const double m = gains.kp_att[i] * err - gains.kd_att[i] * s.rates[i];
        moment[i] = std::clamp(m, -gains.moment_cap, gains.moment_cap);
    }
    return moment;
}

double collective_thrust(const DroneState& s, const Vec3& force, const GainSet& gains) {
    const double roll = s.attitude.x();
    const double pitch = s.attitude.y();
    const Vec3 body_z(std::cos(roll) * std::sin(pitch), -std::sin(roll),
                      std::cos(roll) * std::cos(pitch));
    return std::clamp(force.dot(body_z), 0.0, gains.thrust_cap);
}

ControlOutput control_step(const DroneState& s, const PositionTarget& target, double yaw_ref,
                           const GainSet& gains, const DroneParams& params,
                           const ControllerState& state, double dt) {
    const PositionCommand pos = position_control(s, target, yaw_ref, gains, params, state, dt);
    ControlOutput out;
    out.total_thrust = collective_thrust(s, pos.force, gains);
    out.command.thrust_delta = out.total_thrust - params.hover_thrust();
    out.command.moment = attitude_control(s, pos.attitude, gains);
    out.attitude_des = pos.attitude;
    out.state = pos.state;
    return out;
}

}  // namespace hillsim
