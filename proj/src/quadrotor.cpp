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

#include "hillsim/quadrotor.hpp"

#include "hillsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hillsim {

namespace {

constexpr double kRpmPerPwm = 0.2685;
constexpr double kRpmOffset = 4070.3;

template <int N>
Eigen::Matrix<double, N, 1> rk4(const LinearSubsystem<N>& sys, const Eigen::Matrix<double, N, 1>& x,
                                double u, double dt) {
    using Vec = Eigen::Matrix<double, N, 1>;
    const auto f = [&](const Vec& y) -> Vec { return sys.A * y + sys.B * u; };
    const Vec k1 = f(x);
    const Vec k2 = f(x + 0.5 * dt * k1);
    const Vec k3 = f(x + 0.5 * dt * k2);
    const Vec k4 = f(x + dt * k3);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

void DroneParams::validate() const {
    if (!(mass > 0.0) || !(ixx > 0.0) || !(iyy > 0.0) || !(izz > 0.0) || !(gravity > 0.0)) {
        throw ConfigError("drone parameters must all be positive");
    }
}

DroneParams drone_params_from_config(const KeyValueConfig& cfg) {
    cfg.require_known_keys({"mass", "ixx", "iyy", "izz", "g"}, "drone parameter");
    DroneParams p;
    p.mass = cfg.get_double_or("mass", p.mass);
    p.ixx = cfg.get_double_or("ixx", p.ixx);
    p.iyy = cfg.get_double_or("iyy", p.iyy);
    p.izz = cfg.get_double_or("izz", p.izz);
    p.gravity = cfg.get_double_or("g", p.gravity);
    p.validate();
    return p;
}

KeyValueConfig to_config(const DroneParams& params) {
    KeyValueConfig cfg;
    cfg.set("mass", params.mass);
    cfg.set("ixx", params.ixx);
    cfg.set("iyy", params.iyy);
    cfg.set("izz", params.izz);
    cfg.set("g", params.gravity);
    return cfg;
}

bool DroneState::is_finite() const {
    return position.allFinite() && velocity.allFinite() && attitude.allFinite() &&
           rates.allFinite();
}

PlantModel build_subsystems(const DroneParams& params) {
    params.validate();
    PlantModel m;

    m.vertical.A(1, 0) = 1.0;
    m.vertical.B(0) = 1.0 / params.mass;

    m.yaw.A(1, 0) = 1.0;
    m.yaw.B(0) = 1.0 / params.izz;

    m.lateral.A(1, 0) = 1.0;
    m.lateral.A(2, 1) = -params.gravity;
    m.lateral.A(3, 2) = 1.0;
    m.lateral.B(0) = 1.0 / params.ixx;

    m.longitudinal.A(1, 0) = 1.0;
    m.longitudinal.A(2, 1) = params.gravity;
    m.longitudinal.A(3, 2) = 1.0;
    m.longitudinal.B(0) = 1.0 / params.iyy;
    return m;
}

DroneState step_plant(const PlantModel& model, const DroneState& s, const PlantCommand& cmd,
                      double dt) {
    if (!(dt > 0.0) || dt > kMaxPlantStep) {
        throw StepSizeError("plant step must satisfy 0 < dt <= 0.01 s, got " +
                            std::to_string(dt));
    }
    const Eigen::Vector2d vertical =
        rk4(model.vertical, Eigen::Vector2d(s.velocity.z(), s.position.z()), cmd.thrust_delta, dt);
    const Eigen::Vector2d yaw =
        rk4(model.yaw, Eigen::Vector2d(s.rates.z(), s.attitude.z()), cmd.moment.z(), dt);
    const Eigen::Vector4d lateral =
        rk4(model.lateral,
            Eigen::Vector4d(s.rates.x(), s.attitude.x(), s.velocity.y(), s.position.y()),
            cmd.moment.x(), dt);
    const Eigen::Vector4d longitudinal =
        rk4(model.longitudinal,
            Eigen::Vector4d(s.rates.y(), s.attitude.y(), s.velocity.x(), s.position.x()),
            cmd.moment.y(), dt);

    DroneState out;
    out.position = Vec3(longitudinal[3], lateral[3], vertical[1]);
    out.velocity = Vec3(longitudinal[2], lateral[2], vertical[0]);
    out.attitude = Vec3(wrap_angle(lateral[1]), wrap_angle(longitudinal[1]), wrap_angle(yaw[1]));
    out.rates = Vec3(lateral[0], longitudinal[0], yaw[0]);
    return out;
}

DroneState step_plant(const DroneParams& params, const DroneState& s, const PlantCommand& cmd,
                      double dt) {
    return step_plant(build_subsystems(params), s, cmd, dt);
}

double wrap_angle(double angle) {
    if (angle > -std::numbers::pi && angle <= std::numbers::pi) {
        return angle;
    }
    double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
    if (wrapped <= -std::numbers::pi) {
        wrapped += 2.0 * std::numbers::pi;
    }
    return wrapped;
}

double pwm_to_rpm(double pwm) {
    if (!(pwm >= 0.0 && pwm <= kPwmMax)) {
        throw std::domain_error("PWM must lie in [0, 65535]");
    }
    return kRpmPerPwm * pwm + kRpmOffset;
}

double rpm_to_pwm(double rpm) {
    static const double max_rpm = kRpmPerPwm * kPwmMax + kRpmOffset;
    if (!(rpm >= kRpmOffset && rpm <= max_rpm)) {
        throw std::domain_error("RPM outside the image of the PWM range");
    }
    // Rounding can push the top of the image a hair past kPwmMax.
    return std::min((rpm - kRpmOffset) / kRpmPerPwm, kPwmMax);
}

}  // namespace hillsim
