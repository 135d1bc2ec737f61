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
#include "hillsim/scaling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace hillsim {
namespace {

SampledTrajectory in_plane_nmt_space(std::size_t samples = 2000) {
    const OrbitalContext ctx;
    const HillState ic = nmt_initial_conditions(800.0, 0.16, 0.0, 0.0, ctx);
    return propagate_continuous(ic, {}, ctx, 0.0, 3.0 * ctx.period()).sample_uniform(samples);
}

SampledTrajectory line(double t_end, Vec3 a, Vec3 b, Frame frame = Frame::lab) {
    SampledTrajectory t;
    t.frame = frame;
    t.times = {0.0, t_end};
    Vec6 s0;
    s0 << a, Vec3::Zero();
    Vec6 s1;
    s1 << b, Vec3::Zero();
    t.states = {HillState(s0), HillState(s1)};
    return t;
}

TEST(ScaleToLab, RadialOffsetExample) {
    SampledTrajectory t;
    t.times = {0.0};
    t.states = {HillState(800.0, 0, 0, 0, 0, 0)};
    ScaleConfig cfg;
    cfg.source_span = 10.0;
    const SampledTrajectory lab = scale_to_lab(t, cfg, LabVolume{});
    EXPECT_DOUBLE_EQ(lab.states[0].x(), 0.2);
    EXPECT_DOUBLE_EQ(lab.states[0].z(), 1.0);
    EXPECT_EQ(lab.frame, Frame::lab);
}

TEST(ScaleToLab, UnitFactorsAreIdentity) {
    const SampledTrajectory space = in_plane_nmt_space(50);
    ScaleConfig cfg;
    cfg.distance_factor = 1.0;
    cfg.sim_duration = 10.0;
    cfg.source_span = 10.0;
    LabVolume vol;
    vol.z_offset = 0.0;
    const SampledTrajectory lab = scale_to_lab(space, cfg, vol);
    EXPECT_EQ(lab.times, space.times);
    for (std::size_t i = 0; i < lab.size(); ++i) {
        EXPECT_EQ(lab.states[i].vec, space.states[i].vec);
    }
}

TEST(ScaleToLab, PeakLateralSpeed) {
    const OrbitalContext ctx;
    const SampledTrajectory space = in_plane_nmt_space(20000);
    ScaleConfig cfg;
    cfg.source_span = 3.0 * ctx.period();
    EXPECT_NEAR(cfg.time_factor(), 1835.4, 0.1);
    const SampledTrajectory lab = scale_to_lab(space, cfg, LabVolume{});
    double space_peak = 0.0;
    double lab_peak = 0.0;
    for (std::size_t i = 0; i < lab.size(); ++i) {
        space_peak = std::max(space_peak, std::abs(space.states[i].vy()));
        lab_peak = std::max(lab_peak, std::abs(lab.states[i].vy()));
    }
    const double amplitude = std::hypot(800.0, 0.16 / kEarthMeanMotion);
    EXPECT_NEAR(space_peak, 2.0 * amplitude * kEarthMeanMotion, 1e-6);
    EXPECT_NEAR(space_peak, 1.674, 1e-3);
    EXPECT_NEAR(lab_peak, 0.768, 1e-3);
    EXPECT_NEAR(lab.times.back(), 10.0, 1e-9);
}

TEST(ScaleToLab, RoundTrip) {
    const SampledTrajectory space = in_plane_nmt_space(300);
    ScaleConfig cfg;
    cfg.source_span = space.times.back();
    const LabVolume vol;
    const SampledTrajectory back = unscale_to_space(scale_to_lab(space, cfg, vol), cfg, vol);
    EXPECT_EQ(back.frame, Frame::space);
    for (std::size_t i = 0; i < space.size(); ++i) {
        EXPECT_NEAR(back.times[i], space.times[i], 1e-12 * std::max(1.0, space.times[i]));
        const Vec6 d = back.states[i].vec - space.states[i].vec;
        EXPECT_LT(d.lpNorm<Eigen::Infinity>(),
                  1e-12 * space.states[i].vec.lpNorm<Eigen::Infinity>());
    }
}

TEST(ScaleToLab, FrameChecksAndConfigValidation) {
    const SampledTrajectory lab = line(1.0, Vec3::Zero(), Vec3::Ones());
    EXPECT_THROW(scale_to_lab(lab, ScaleConfig{}, LabVolume{}), InputError);
    SampledTrajectory space = lab;
    space.frame = Frame::space;
    EXPECT_THROW(unscale_to_space(space, ScaleConfig{}, LabVolume{}), InputError);
    ScaleConfig bad;
    bad.distance_factor = 0.0;
    EXPECT_THROW(scale_to_lab(space, bad, LabVolume{}), ConfigError);
    bad = ScaleConfig{};
    bad.sim_duration = -1.0;
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = ScaleConfig{};
    bad.source_span = 0.0;
    EXPECT_THROW(bad.validate(), ConfigError);
    LabVolume vol;
    vol.z_offset = 3.0;
    EXPECT_THROW(vol.validate(), ConfigError);
    vol = LabVolume{};
    vol.x_extent = 0.0;
    EXPECT_THROW(vol.validate(), ConfigError);
}

TEST(WaypointCount, Law) {
    EXPECT_EQ(waypoint_count(48.0, 10.0), 480u);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> freq(1.0, 500.0);
    std::uniform_real_distribution<double> dur(0.1, 60.0);
    for (int i = 0; i < 200; ++i) {
        const double f = freq(rng);
        const double d = dur(rng);
        EXPECT_EQ(waypoint_count(f, d), static_cast<std::size_t>(std::llround(f * d)));
    }
    EXPECT_THROW(waypoint_count(0.0, 1.0), InputError);
}

TEST(ResampleWaypoints, Midpoint) {
    const SampledTrajectory t = line(1.0, Vec3::Zero(), Vec3(1, 0, 0));
    const WaypointList wps = resample_waypoints(t, 2.0, 1.0);
    ASSERT_EQ(wps.size(), 2u);
    EXPECT_EQ(wps.positions[0], Vec3::Zero());
    EXPECT_DOUBLE_EQ(wps.positions[1].x(), 0.5);
    EXPECT_DOUBLE_EQ(wps.time(1), 0.5);
}

TEST(ResampleWaypoints, SingleSamplePeriod) {
    const SampledTrajectory t = line(1.0, Vec3(0.1, 0.2, 1.3), Vec3(1, 0, 0));
    const WaypointList wps = resample_waypoints(t, 48.0, 1.0 / 48.0);
    ASSERT_EQ(wps.size(), 1u);
    EXPECT_EQ(wps.positions[0], Vec3(0.1, 0.2, 1.3));
}

TEST(ResampleWaypoints, ScaledNmtExample) {
    const OrbitalContext ctx;
    const SampledTrajectory space = in_plane_nmt_space(1000);
    ScaleConfig cfg;
    cfg.source_span = 3.0 * ctx.period();
    const LabVolume vol;
    const WaypointList wps = resample_waypoints(scale_to_lab(space, cfg, vol), 48.0, 10.0);
    EXPECT_EQ(wps.size(), 480u);
    double max_x = 0.0;
    double max_y = 0.0;
    for (const auto& p : wps.positions) {
        max_x = std::max(max_x, std::abs(p.x()));
        max_y = std::max(max_y, std::abs(p.y()));
        EXPECT_DOUBLE_EQ(p.z(), 1.0);
    }
    EXPECT_NEAR(max_x, 0.204, 1e-3);
    EXPECT_NEAR(max_y, 0.408, 1e-3);
    EXPECT_TRUE(check_bounds(wps, vol).empty());
}

TEST(ResampleWaypoints, NeverExtrapolates) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SampledTrajectory t;
    t.frame = Frame::lab;
    double time = 0.0;
    for (int i = 0; i < 40; ++i) {
        t.times.push_back(time);
        t.states.emplace_back(u(rng), u(rng), 1.0 + u(rng), 0, 0, 0);
        time += 0.05 + 0.2 * (u(rng) + 1.0);
    }
    const double duration = t.times.back();
    const WaypointList wps = resample_waypoints(t, 37.0, duration);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < wps.size(); ++k) {
        const double tk = wps.time(k);
        if (k > 0) {
            EXPECT_GT(tk, wps.time(k - 1));
        }
        while (seg + 1 < t.size() && t.times[seg + 1] <= tk) {
            ++seg;
        }
        const std::size_t hi = std::min(seg + 1, t.size() - 1);
        for (int axis = 0; axis < 3; ++axis) {
            const double a = t.states[seg].vec[axis];
            const double b = t.states[hi].vec[axis];
            EXPECT_GE(wps.positions[k][axis], std::min(a, b) - 1e-15);
            EXPECT_LE(wps.positions[k][axis], std::max(a, b) + 1e-15);
        }
    }
}

TEST(ResampleWaypoints, CoverageError) {
    const SampledTrajectory t = line(1.0, Vec3::Zero(), Vec3::Ones());
    EXPECT_THROW(resample_waypoints(t, 48.0, 2.0), CoverageError);
    SampledTrajectory late = t;
    late.times = {0.5, 1.5};
    EXPECT_THROW(resample_waypoints(late, 48.0, 1.0), CoverageError);
    EXPECT_THROW(resample_waypoints(t, 1.0, 0.2), InputError);
}

TEST(CheckBounds, Violations) {
    WaypointList wps;
    wps.positions = {Vec3(0, 0, 1), Vec3(5, 0, 1), Vec3(0, 0, -0.1), Vec3(2, -1.5, 2.5),
                     Vec3(0, 1.6, 3.0)};
    const auto v = check_bounds(wps, LabVolume{});
    ASSERT_EQ(v.size(), 4u);
    EXPECT_EQ(v[0].index, 1u);
    EXPECT_EQ(v[0].axis, 'x');
    EXPECT_EQ(v[0].value, 5.0);
    EXPECT_EQ(v[1].index, 2u);
    EXPECT_EQ(v[1].axis, 'z');
    EXPECT_EQ(v[2].index, 4u);
    EXPECT_EQ(v[2].axis, 'y');
    EXPECT_EQ(v[3].axis, 'z');

    WaypointList nan_wp;
    nan_wp.positions = {Vec3(std::nan(""), 0, 1)};
    EXPECT_EQ(check_bounds(nan_wp, LabVolume{}).size(), 1u);
}

}  // namespace
}  // namespace hillsim
