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

#include "hillsim/docking.hpp"
#include "hillsim/errors.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <limits>

namespace hillsim {
namespace {

TEST(ClosedLoop, PdPolicyDocksFromReference) {
    const OrbitalContext ctx;
    const DockingConfig cfg;
    const HillState ic = reference_docking_state(ctx);
    EXPECT_EQ(ic.x(), 100.0);
    EXPECT_NEAR(ic.vy(), -0.2 * ctx.mean_motion() * 100.0, 1e-15);

    const Episode ep = run_closed_loop(pd_docking_policy(ctx), ic, ctx, cfg);
    EXPECT_EQ(ep.trajectory.size(), 101u);
    EXPECT_EQ(ep.thrusts.size(), 100u);
    EXPECT_TRUE(ep.summary.success);
    ASSERT_TRUE(ep.summary.time_to_dock.has_value());
    EXPECT_LE(*ep.summary.time_to_dock, 10.0);
    EXPECT_LT(ep.summary.final_distance, cfg.success_radius);
    EXPECT_GT(ep.summary.fuel, 0.0);
    EXPECT_EQ(ep.trajectory.frame, Frame::space);
}

TEST(ClosedLoop, ZeroPolicyMatchesDiscretePropagation) {
    const OrbitalContext ctx;
    const DockingConfig cfg;
    const HillState ic(20.0, -5.0, 3.0, 0.1, 0.02, -0.01);
    const Episode ep = run_closed_loop(zero_policy(), ic, ctx, cfg);
    const SampledTrajectory coast = propagate_discrete(ic, {}, ctx, cfg.dt, cfg.steps());
    ASSERT_EQ(ep.trajectory.size(), coast.size());
    for (std::size_t k = 0; k < coast.size(); ++k) {
        EXPECT_EQ(ep.trajectory.states[k], coast.states[k]);
        EXPECT_EQ(ep.trajectory.times[k], coast.times[k]);
    }
    EXPECT_EQ(ep.summary.fuel, 0.0);
    EXPECT_FALSE(ep.summary.success);
    EXPECT_FALSE(ep.summary.time_to_dock.has_value());
}

TEST(ClosedLoop, ThrustIsClamped) {
    const OrbitalContext ctx;
    PdDockingGains gains;
    gains.thrust_cap = 2.0;
    const Episode ep =
        run_closed_loop(pd_docking_policy(ctx, gains), reference_docking_state(ctx), ctx, {});
    bool saturated = false;
    for (const auto& u : ep.thrusts) {
        EXPECT_LE(u.force.norm(), 2.0 * (1.0 + 1e-12));
        saturated = saturated || u.force.norm() > 1.999;
    }
    EXPECT_TRUE(saturated);
}

TEST(ClosedLoop, NonFinitePolicyReportsStep) {
    const OrbitalContext ctx;
    int calls = 0;
    ThrustPolicy broken{"broken",
                        [&calls](const HillState&) {
                            return ++calls > 7 ? ControlThrust(std::nan(""), 0.0, 0.0)
                                               : ControlThrust();
                        },
                        1.0};
    try {
        run_closed_loop(broken, reference_docking_state(ctx), ctx, {});
        FAIL() << "expected PolicyError";
    } catch (const PolicyError& e) {
        EXPECT_EQ(e.step(), 7u);
    }
}

TEST(DockingConfig, Validation) {
    DockingConfig cfg;
    EXPECT_EQ(cfg.steps(), 100u);
    cfg.dt = 0.3;
    EXPECT_THROW(cfg.steps(), ConfigError);

    DockingConfig bad;
    bad.v_max = 0.0;
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = DockingConfig{};
    bad.shell_inner = 200.0;
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = DockingConfig{};
    bad.success_radius = -1.0;
    EXPECT_THROW(bad.validate(), ConfigError);

    DockingConfig sloped;
    sloped.distance_slope = 0.002;
    EXPECT_DOUBLE_EQ(sloped.speed_limit(100.0), 0.4);
    EXPECT_EQ(DockingConfig{}.speed_limit(100.0), 0.2);
}

TEST(SafeInitializer, RespectsSpeedLimitAndShell) {
    const OrbitalContext ctx;
    const DockingConfig cfg;
    SafeInitializer init(cfg, ctx);
    for (int i = 0; i < 10000; ++i) {
        const HillState s = init.next();
        EXPECT_LE(s.velocity().norm(), cfg.v_max);
        const double r = s.position().norm();
        EXPECT_GE(r, cfg.shell_inner * (1.0 - 1e-12));
        EXPECT_LE(r, cfg.shell_outer * (1.0 + 1e-12));
    }
}

TEST(SafeInitializer, DistanceDependentLimit) {
    const OrbitalContext ctx;
    DockingConfig cfg;
    cfg.distance_slope = 0.004;
    SafeInitializer init(cfg, ctx);
    bool beyond_flat_limit = false;
    for (int i = 0; i < 2000; ++i) {
        const HillState s = init.next();
        EXPECT_LE(s.velocity().norm(), cfg.speed_limit(s.position().norm()));
        beyond_flat_limit = beyond_flat_limit || s.velocity().norm() > cfg.v_max;
    }
    EXPECT_TRUE(beyond_flat_limit);
}

TEST(SafeInitializer, SeededDrawsRepeat) {
    const OrbitalContext ctx;
    DockingConfig cfg;
    cfg.seed = 42;
    SafeInitializer a(cfg, ctx);
    SafeInitializer b(cfg, ctx);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.next(), b.next());
    }
    EXPECT_EQ(safe_random_initial_state(cfg, ctx), safe_random_initial_state(cfg, ctx));
    cfg.seed = 43;
    EXPECT_FALSE(safe_random_initial_state(cfg, ctx) == SafeInitializer(DockingConfig{}, ctx).next());
}

TEST(TrajectoryRecord, RoundTrip) {
    const OrbitalContext ctx;
    const Episode ep = run_closed_loop(pd_docking_policy(ctx), reference_docking_state(ctx), ctx, {});
    const testing::TempDir dir;
    save_trajectory_record(dir / "ep.json", ep.trajectory);
    const SampledTrajectory back = load_trajectory_record(dir / "ep.json");
    ASSERT_EQ(back.size(), ep.trajectory.size());
    for (std::size_t k = 0; k < back.size(); ++k) {
        EXPECT_EQ(back.times[k], ep.trajectory.times[k]);
        EXPECT_EQ(back.states[k], ep.trajectory.states[k]);
    }
    EXPECT_THROW(load_trajectory_record(dir / "missing.json"), IoError);
}

TEST(SummaryJson, Keys) {
    EpisodeSummary s;
    s.steps = 3;
    auto doc = nlohmann::json::parse(summary_to_json(s));
    EXPECT_TRUE(doc["time_to_dock"].is_null());
    EXPECT_EQ(doc["steps"].get<int>(), 3);
    s.time_to_dock = 2.5;
    s.success = true;
    doc = nlohmann::json::parse(summary_to_json(s));
    EXPECT_EQ(doc["time_to_dock"].get<double>(), 2.5);
    EXPECT_TRUE(doc["success"].get<bool>());
}

}  // namespace
}  // namespace hillsim
