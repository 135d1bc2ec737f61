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

#include "hillsim/errors.hpp"
#include "hillsim/quadrotor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace hillsim {
namespace {

DroneState random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    DroneState s;
    for (int i = 0; i < 3; ++i) {
        s.position[i] = u(rng);
        s.velocity[i] = u(rng);
        s.attitude[i] = 0.2 * u(rng);
        s.rates[i] = u(rng);
    }
    return s;
}

PlantCommand random_command(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PlantCommand c;
    c.thrust_delta = 0.05 * u(rng);
    c.moment = 1e-4 * Vec3(u(rng), u(rng), u(rng));
    return c;
}

TEST(DroneParams, Defaults) {
    const DroneParams p;
    EXPECT_EQ(p.mass, 0.027);
    EXPECT_EQ(p.ixx, 1.4e-5);
    EXPECT_EQ(p.iyy, 1.4e-5);
    EXPECT_EQ(p.izz, 2.17e-5);
    EXPECT_EQ(p.gravity, 9.81);
    EXPECT_NEAR(p.hover_thrust(), 0.26487, 1e-12);
}

TEST(DroneParams, ConfigRoundTripAndErrors) {
    DroneParams p;
    p.mass = 0.031;
    const DroneParams back = drone_params_from_config(to_config(p));
    EXPECT_EQ(back.mass, 0.031);
    EXPECT_EQ(back.izz, p.izz);
    EXPECT_THROW(drone_params_from_config(KeyValueConfig::parse("mass = -1\n")), ConfigError);
    EXPECT_THROW(drone_params_from_config(KeyValueConfig::parse("weight = 1\n")), SchemaError);
}

TEST(BuildSubsystems, Entries) {
    const PlantModel m = build_subsystems(DroneParams{});
    EXPECT_NEAR(m.vertical.B(0), 37.037, 1e-3);
    EXPECT_NEAR(m.yaw.B(0), 46082.95, 1e-2);
    EXPECT_EQ(m.lateral.A(2, 1), -9.81);
    EXPECT_EQ(m.longitudinal.A(2, 1), 9.81);
    EXPECT_DOUBLE_EQ(m.lateral.B(0), 1.0 / 1.4e-5);
    EXPECT_DOUBLE_EQ(m.longitudinal.B(0), 1.0 / 1.4e-5);
    EXPECT_EQ(m.vertical.A(1, 0), 1.0);
    EXPECT_EQ(m.lateral.A(3, 2), 1.0);
}

TEST(StepPlant, RestWithZeroCommandIsEquilibrium) {
    DroneState s;
    s.position = Vec3(0.3, -0.2, 1.0);
    s.attitude.z() = std::numbers::pi / 2.0;
    EXPECT_EQ(step_plant(DroneParams{}, s, PlantCommand{}, 1.0 / 240.0), s);
}

TEST(StepPlant, VerticalDoubleIntegratorIsExact) {
    const DroneParams p;
    const PlantModel m = build_subsystems(p);
    PlantCommand cmd;
    cmd.thrust_delta = p.mass * 1.0;
    DroneState s;
    for (int i = 0; i < 240; ++i) {
        s = step_plant(m, s, cmd, 1.0 / 240.0);
    }
    EXPECT_NEAR(s.velocity.z(), 1.0, 1e-12);
    EXPECT_NEAR(s.position.z(), 0.5, 1e-12);
    EXPECT_EQ(s.position.x(), 0.0);
    EXPECT_EQ(s.position.y(), 0.0);
    EXPECT_EQ(s.attitude, Vec3::Zero());
}

TEST(StepPlant, RollMomentSigns) {
    const PlantModel m = build_subsystems(DroneParams{});
    PlantCommand pulse;
    pulse.moment.x() = 1e-5;
    DroneState s = step_plant(m, DroneState{}, pulse, 0.005);
    for (int i = 0; i < 40; ++i) {
        s = step_plant(m, s, PlantCommand{}, 0.005);
    }
    EXPECT_GT(s.attitude.x(), 0.0);
    EXPECT_LT(s.velocity.y(), 0.0);
    EXPECT_LT(s.position.y(), 0.0);

    PlantCommand pitch;
    pitch.moment.y() = 1e-5;
    DroneState q = step_plant(m, DroneState{}, pitch, 0.005);
    for (int i = 0; i < 40; ++i) {
        q = step_plant(m, q, PlantCommand{}, 0.005);
    }
    EXPECT_GT(q.attitude.y(), 0.0);
    EXPECT_GT(q.velocity.x(), 0.0);
}

TEST(StepPlant, ThrustOnlyPerturbationIsDecoupled) {
    const PlantModel m = build_subsystems(DroneParams{});
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const DroneState s = random_state(rng);
        PlantCommand base = random_command(rng);
        PlantCommand bumped = base;
        bumped.thrust_delta += 0.01;
        const DroneState a = step_plant(m, s, base, 0.004);
        const DroneState b = step_plant(m, s, bumped, 0.004);
        EXPECT_EQ(a.position.x(), b.position.x());
        EXPECT_EQ(a.position.y(), b.position.y());
        EXPECT_EQ(a.attitude, b.attitude);
        EXPECT_NE(a.position.z(), b.position.z());
    }
}

TEST(StepPlant, Superposition) {
    const PlantModel m = build_subsystems(DroneParams{});
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const DroneState s1 = random_state(rng);
        const DroneState s2 = random_state(rng);
        const PlantCommand c1 = random_command(rng);
        const PlantCommand c2 = random_command(rng);
        const double a = 0.7;
        const double b = -1.3;
        DroneState combo;
        combo.position = a * s1.position + b * s2.position;
        combo.velocity = a * s1.velocity + b * s2.velocity;
        combo.attitude = a * s1.attitude + b * s2.attitude;
        combo.rates = a * s1.rates + b * s2.rates;
        PlantCommand cc;
        cc.thrust_delta = a * c1.thrust_delta + b * c2.thrust_delta;
        cc.moment = a * c1.moment + b * c2.moment;

        const DroneState r1 = step_plant(m, s1, c1, 0.01);
        const DroneState r2 = step_plant(m, s2, c2, 0.01);
        const DroneState rc = step_plant(m, combo, cc, 0.01);
        auto check = [](const Vec3& got, const Vec3& want) {
            EXPECT_LE((got - want).norm(), 1e-9 * std::max(1.0, want.norm()));
        };
        check(rc.position, a * r1.position + b * r2.position);
        check(rc.velocity, a * r1.velocity + b * r2.velocity);
        check(rc.attitude, a * r1.attitude + b * r2.attitude);
        check(rc.rates, a * r1.rates + b * r2.rates);
    }
}

TEST(StepPlant, StepSizeLimits) {
    const DroneParams p;
    EXPECT_THROW(step_plant(p, DroneState{}, PlantCommand{}, 0.0), StepSizeError);
    EXPECT_THROW(step_plant(p, DroneState{}, PlantCommand{}, -0.001), StepSizeError);
    EXPECT_THROW(step_plant(p, DroneState{}, PlantCommand{}, 0.0101), StepSizeError);
    EXPECT_NO_THROW(step_plant(p, DroneState{}, PlantCommand{}, 0.01));
}

TEST(StepPlant, AttitudeStaysWrapped) {
    const PlantModel m = build_subsystems(DroneParams{});
    DroneState s;
    s.attitude.z() = std::numbers::pi - 1e-3;
    s.rates.z() = 1.0;
    for (int i = 0; i < 10; ++i) {
        s = step_plant(m, s, PlantCommand{}, 0.01);
        EXPECT_GT(s.attitude.z(), -std::numbers::pi);
        EXPECT_LE(s.attitude.z(), std::numbers::pi);
    }
    EXPECT_LT(s.attitude.z(), 0.0);
}

TEST(WrapAngle, HalfOpenInterval) {
    EXPECT_EQ(wrap_angle(0.5), 0.5);
    EXPECT_DOUBLE_EQ(wrap_angle(std::numbers::pi), std::numbers::pi);
    EXPECT_DOUBLE_EQ(wrap_angle(-std::numbers::pi), std::numbers::pi);
    EXPECT_NEAR(wrap_angle(3.0 * std::numbers::pi / 2.0), -std::numbers::pi / 2.0, 1e-15);
    EXPECT_NEAR(wrap_angle(-7.0), -7.0 + 2.0 * std::numbers::pi, 1e-15);
}

TEST(PwmMap, Examples) {
    EXPECT_EQ(pwm_to_rpm(0.0), 4070.3);
    EXPECT_NEAR(pwm_to_rpm(65535.0), 21666.4475, 1e-9);
    EXPECT_THROW(pwm_to_rpm(-1.0), std::domain_error);
    EXPECT_THROW(pwm_to_rpm(65536.0), std::domain_error);
    EXPECT_THROW(rpm_to_pwm(4000.0), std::domain_error);
    EXPECT_THROW(rpm_to_pwm(std::nan("")), std::domain_error);
}

TEST(PwmMap, RoundTrip) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, kPwmMax);
    for (int i = 0; i < 1000; ++i) {
        const double pwm = u(rng);
        EXPECT_NEAR(rpm_to_pwm(pwm_to_rpm(pwm)), pwm, 1e-9);
    }
    EXPECT_EQ(rpm_to_pwm(pwm_to_rpm(0.0)), 0.0);
}

TEST(PwmMap, TopOfRangeStaysInDomain) {
    const double top = pwm_to_rpm(kPwmMax);
    EXPECT_LE(rpm_to_pwm(top), kPwmMax);
    EXPECT_NEAR(pwm_to_rpm(rpm_to_pwm(top)), top, 1e-9);
}

}  // namespace
}  // namespace hillsim
