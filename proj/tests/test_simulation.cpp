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

#include "temp_dir.hpp"

#include "hillsim/errors.hpp"
#include "hillsim/file_util.hpp"
#include "hillsim/simulation.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>

namespace hillsim {
namespace {

WaypointList stationary(const Vec3& p, std::size_t count, double rate = 48.0) {
    WaypointList w;
    w.frequency = rate;
    w.positions.assign(count, p);
    return w;
}

WaypointList circle(std::size_t count, double radius, double omega) {
    WaypointList w;
    for (std::size_t k = 0; k < count; ++k) {
        const double t = w.time(k);
        w.positions.emplace_back(radius * std::cos(omega * t), radius * std::sin(omega * t),
                                 1.0 + 0.1 * std::sin(0.5 * omega * t));
    }
    return w;
}

GainSet zero_gains() {
    GainSet g;
    g.kp.setZero();
    g.ki.setZero();
    g.kd.setZero();
    g.ka.setZero();
    g.kp_att.setZero();
    g.kd_att.setZero();
    return g;
}

double position_error(const SimStep& s) {
    return (s.waypoint - s.state.position).norm();
}

TEST(RunTracking, FixedPoint) {
    const SimLog log = run_tracking(stationary(Vec3(0, 0, 1), 480), DroneParams{}, GainSet{},
                                    SimConfig{});
    ASSERT_EQ(log.size(), 480u);
    for (const auto& s : log.steps) {
        EXPECT_LT(position_error(s), 1e-6);
    }
}

// With integral action and no disturbance the integral of the error must
// return to zero, so the error crosses zero once and then decays with the
// slow integrator pole; it is monotone from the peak of that lobe on.
TEST(RunTracking, HoverRegulationFromBelow) {
    SimConfig cfg;
    DroneState start;
    start.position = Vec3(0, 0, 0.9);
    start.attitude = Vec3(0, 0, kDefaultYawReference);
    cfg.initial_state = start;
    const SimLog log = run_tracking(stationary(Vec3(0, 0, 1), 480), DroneParams{}, GainSet{}, cfg);
    for (const auto& s : log.steps) {
        if (s.time >= 2.0) {
            EXPECT_LT(position_error(s), 0.01) << "t = " << s.time;
        }
        if (s.time >= 3.0) {
            const auto& prev = log.steps[static_cast<std::size_t>(std::lround(s.time * 48.0)) - 1];
            EXPECT_LE(position_error(s), position_error(prev)) << "t = " << s.time;
        }
    }
    EXPECT_NEAR(log.steps.back().total_thrust, 0.26487, 1e-3);
}

TEST(RunTracking, LogLengthLawAndTimes) {
    for (double rate : {24.0, 48.0, 60.0}) {
        for (double duration : {0.5, 1.0, 3.3}) {
            SimConfig cfg;
            cfg.control_rate = rate;
            cfg.physics_rate = 5.0 * rate;
            cfg.duration = duration;
            const SimLog log =
                run_tracking(stationary(Vec3(0, 0, 1), 10, rate), DroneParams{}, GainSet{}, cfg);
            EXPECT_EQ(log.size(), static_cast<std::size_t>(std::llround(rate * duration)));
            for (std::size_t k = 1; k < log.size(); ++k) {
                EXPECT_GT(log.steps[k].time, log.steps[k - 1].time);
            }
        }
    }
}

TEST(RunTracking, ZeroGainsHoldStateConstant) {
    const SimLog log = run_tracking(circle(240, 0.3, 1.5), DroneParams{}, zero_gains(),
                                    SimConfig{});
    const DroneState& first = log.steps.front().state;
    for (const auto& s : log.steps) {
        EXPECT_EQ(s.state, first);
        EXPECT_EQ(s.command, PlantCommand{});
    }
}

TEST(RunTracking, TracksSmoothCircle) {
    const SimLog log = run_tracking(circle(480, 0.3, 1.2), DroneParams{}, GainSet{}, SimConfig{});
    const TrackingMetrics m = compute_metrics(log);
    EXPECT_LT(m.rms.maxCoeff(), 0.05);
}

TEST(RunTracking, Errors) {
    const DroneParams p;
    const GainSet g;
    EXPECT_THROW(run_tracking(WaypointList{}, p, g, SimConfig{}), InputError);
    EXPECT_THROW(run_tracking(stationary(Vec3(0, 0, 1), 10, 50.0), p, g, SimConfig{}),
                 ConfigError);
    SimConfig odd;
    odd.physics_rate = 100.0;
    EXPECT_THROW(run_tracking(stationary(Vec3(0, 0, 1), 10), p, g, odd), ConfigError);
    SimConfig fast;
    fast.physics_rate = 48.0;
    EXPECT_THROW(run_tracking(stationary(Vec3(0, 0, 1), 10), p, g, fast), StepSizeError);

    WaypointList outside = stationary(Vec3(0, 0, 1), 10);
    outside.positions[4] = Vec3(3.0, 0, 1);
    EXPECT_THROW(run_tracking(outside, p, g, SimConfig{}), BoundsError);
    SimConfig forced;
    forced.force_bounds = true;
    EXPECT_EQ(run_tracking(outside, p, g, forced).size(), 10u);
}

TEST(RunTracking, Deterministic) {
    const WaypointList w = circle(300, 0.4, 1.0);
    EXPECT_EQ(run_tracking(w, DroneParams{}, GainSet{}, SimConfig{}),
              run_tracking(w, DroneParams{}, GainSet{}, SimConfig{}));
}

TEST(ReferenceTargets, CentralDifferences) {
    WaypointList w;
    w.frequency = 10.0;
    for (int k = 0; k < 6; ++k) {
        const double t = w.time(static_cast<std::size_t>(k));
        w.positions.emplace_back(2.0 * t, 0.5 * t * t, 1.0);
    }
    const auto targets = reference_targets(w);
    for (std::size_t k = 1; k + 1 < targets.size(); ++k) {
        EXPECT_NEAR(targets[k].velocity.x(), 2.0, 1e-12);
        EXPECT_NEAR(targets[k].velocity.y(), w.time(k), 1e-12);
        EXPECT_NEAR(targets[k].acceleration.y(), 1.0, 1e-9);
        EXPECT_NEAR(targets[k].acceleration.x(), 0.0, 1e-9);
    }
    EXPECT_EQ(reference_targets(stationary(Vec3(1, 2, 3), 1))[0].velocity, Vec3::Zero());
}

TEST(RunSwarm, MatchesIndependentRuns) {
    SwarmAssignment a;
    a.push_back({"radio://0/80/2M/E7E7E7E701", circle(200, 0.3, 1.0), GainSet{}, DroneParams{}});
    GainSet soft;
    soft.kp = Vec3::Constant(9.0);
    a.push_back({"radio://0/80/2M/E7E7E7E702", circle(200, 0.5, 0.7), soft, DroneParams{}});
    const SimConfig cfg;
    const auto parallel = run_swarm(a, cfg, true);
    const auto serial = run_swarm(a, cfg, false);
    ASSERT_EQ(parallel.size(), 2u);
    EXPECT_EQ(parallel, serial);
    for (const auto& m : a) {
        EXPECT_EQ(parallel.at(m.uri), run_tracking(m.waypoints, m.params, m.gains, cfg));
    }
    const SwarmAssignment alone(a.begin(), a.begin() + 1);
    EXPECT_EQ(run_swarm(alone, cfg).at(a[0].uri), parallel.at(a[0].uri));
}

TEST(RunSwarm, DuplicateAndEmpty) {
    SwarmAssignment a;
    a.push_back({"radio://dup", stationary(Vec3(0, 0, 1), 5), GainSet{}, DroneParams{}});
    a.push_back({"radio://dup", stationary(Vec3(0, 0, 1), 5), GainSet{}, DroneParams{}});
    try {
        run_swarm(a, SimConfig{});
        FAIL() << "expected AssignmentError";
    } catch (const AssignmentError& e) {
        EXPECT_NE(std::string(e.what()).find("radio://dup"), std::string::npos);
    }
    EXPECT_TRUE(run_swarm(SwarmAssignment{}, SimConfig{}).empty());
}

SimLog log_with_x_errors(const std::vector<double>& errors) {
    SimLog log;
    for (std::size_t k = 0; k < errors.size(); ++k) {
        SimStep s;
        s.time = static_cast<double>(k) / 48.0;
        s.waypoint = Vec3(0.3, -0.2, 1.0);
        s.state.position = s.waypoint - Vec3(errors[k], 0.0, 0.0);
        log.steps.push_back(s);
    }
    return log;
}

TEST(ComputeMetrics, Examples) {
    const TrackingMetrics perfect = compute_metrics(log_with_x_errors(std::vector<double>(20, 0.0)));
    EXPECT_EQ(perfect.rms, Vec3::Zero());
    EXPECT_EQ(perfect.max, Vec3::Zero());
    EXPECT_EQ(perfect.final_error, 0.0);

    const TrackingMetrics offset = compute_metrics(log_with_x_errors(std::vector<double>(20, 0.1)));
    EXPECT_NEAR(offset.rms.x(), 0.1, 1e-15);
    EXPECT_NEAR(offset.max.x(), 0.1, 1e-15);
    EXPECT_EQ(offset.rms.y(), 0.0);
    EXPECT_EQ(offset.max.z(), 0.0);

    std::vector<double> alternating;
    for (int k = 0; k < 21; ++k) {
        alternating.push_back(k % 2 == 0 ? 0.1 : -0.1);
    }
    const TrackingMetrics alt = compute_metrics(log_with_x_errors(alternating));
    EXPECT_NEAR(alt.rms.x(), 0.1, 1e-15);
    EXPECT_NEAR(alt.max.x(), 0.1, 1e-15);
    EXPECT_LE(alt.rms.x(), alt.max.x());

    EXPECT_THROW(compute_metrics(SimLog{}), InputError);
}

TEST(ComputeMetrics, MaxDominatesRms) {
    const SimLog log = run_tracking(circle(480, 0.6, 2.0), DroneParams{}, GainSet{}, SimConfig{});
    const TrackingMetrics m = compute_metrics(log);
    for (int i = 0; i < 3; ++i) {
        EXPECT_GE(m.rms[i], 0.0);
        EXPECT_GE(m.max[i], m.rms[i]);
    }
    EXPECT_GE(m.final_error, 0.0);
}

TEST(SimExports, Formats) {
    const SimLog log = run_tracking(circle(20, 0.2, 1.0), DroneParams{}, GainSet{}, SimConfig{});
    const std::string csv = log_to_csv(log);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,wx,wy,wz,x,y,z,fz,mx,my,mz");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 21);

    const auto doc = nlohmann::json::parse(log_to_json(log));
    EXPECT_EQ(doc["steps"].size(), 20u);
    EXPECT_EQ(doc["steps"][3]["x"].get<double>(), log.steps[3].state.position.x());
    EXPECT_EQ(doc["steps"][3]["thrust"].get<double>(), log.steps[3].total_thrust);

    const auto metrics = nlohmann::json::parse(metrics_to_json(compute_metrics(log)));
    EXPECT_TRUE(metrics.contains("rms"));
    EXPECT_TRUE(metrics["max"].contains("z"));
    EXPECT_TRUE(metrics.contains("final_error"));

    const std::string plot = plot_data_csv(log);
    EXPECT_EQ(plot.substr(0, plot.find('\n')), "t,wx,x,wy,y,wz,z");

    const testing::TempDir dir;
    write_log(dir / "log.csv", log);
    write_log(dir / "log.json", log);
    EXPECT_EQ(read_file(dir / "log.csv"), csv);
    EXPECT_THROW(write_log(dir / "log.txt", log), InputError);
}

}  // namespace
}  // namespace hillsim
