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

#include "hillsim/docking.hpp"

#include "hillsim/errors.hpp"
#include "hillsim/file_util.hpp"
#include "hillsim/trajectory_io.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hillsim {

ThrustPolicy zero_policy(double thrust_cap) {
    return {"zero", [](const HillState&) { return ControlThrust{}; }, thrust_cap};
}

ThrustPolicy pd_docking_policy(const OrbitalContext& ctx, const PdDockingGains& gains) {
    const double m = ctx.deputy_mass();
    return {"pd",
            [m, gains](const HillState& s) {
                return ControlThrust(-m * (gains.kp * s.position() + gains.kd * s.velocity()));
            },
            gains.thrust_cap};
}

void DockingConfig::validate() const {
    if (!(horizon > 0.0) || !(dt > 0.0)) {
        throw ConfigError("docking horizon and step must be positive");
    }
    if (!(success_radius > 0.0) || !(v_max > 0.0)) {
        throw ConfigError("success radius and v_max must be positive");
    }
    if (distance_slope && !(*distance_slope >= 0.0)) {
        throw ConfigError("distance-dependent speed slope must be non-negative");
    }
    if (!(shell_inner >= 0.0) || !(shell_outer >= shell_inner)) {
        throw ConfigError("initial-position shell must satisfy 0 <= inner <= outer");
    }
    if (!(velocity_box > 0.0)) {
        throw ConfigError("velocity box half-width must be positive");
    }
    steps();
}

std::size_t DockingConfig::steps() const {
    const double ratio = horizon / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError("docking horizon must be an integer number of steps");
    }
    return static_cast<std::size_t>(rounded);
}

double DockingConfig::speed_limit(double distance) const {
    return distance_slope ? v_max + *distance_slope * distance : v_max;
}

Episode run_closed_loop(const ThrustPolicy& policy, const HillState& ic,
                        const OrbitalContext& ctx, const DockingConfig& cfg) {
    cfg.validate();
    if (!policy.law) {
        throw InputError("thrust policy '" + policy.name + "' has no control law");
    }
    if (!(policy.thrust_cap > 0.0)) {
        throw ConfigError("thrust policy cap must be positive");
    }
    const std::size_t steps = cfg.steps();
    const DiscreteTransition tr = discrete_transition(ctx, cfg.dt, TransitionMode::oracle);

    Episode ep;
    ep.trajectory.frame = Frame::space;
    ep.trajectory.times.reserve(steps + 1);
    ep.trajectory.states.reserve(steps + 1);
    ep.thrusts.reserve(steps);
    ep.trajectory.times.push_back(0.0);
    ep.trajectory.states.push_back(ic);

    const auto docked = [&](const HillState& s) { return s.position().norm() < cfg.success_radius; };
    if (docked(ic)) {
        ep.summary.time_to_dock = 0.0;
    }
    for (std::size_t k = 0; k < steps; ++k) {
        const HillState& s = ep.trajectory.states.back();
        ControlThrust u = policy.law(s);
        if (!u.force.allFinite()) {
            throw PolicyError("policy '" + policy.name + "' produced a non-finite thrust at step " +
                                  std::to_string(k),
                              k);
        }
        const double magnitude = u.force.norm();
        if (magnitude > policy.thrust_cap) {
            u.force *= policy.thrust_cap / magnitude;
        }
        ep.summary.fuel += u.force.norm() * cfg.dt;
        ep.thrusts.push_back(u);
        ep.trajectory.states.push_back(advance(tr, s, u));
        const double t = static_cast<double>(k + 1) * cfg.dt;
        ep.trajectory.times.push_back(t);
        if (!ep.summary.time_to_dock && docked(ep.trajectory.states.back())) {
            ep.summary.time_to_dock = t;
        }
    }
    ep.summary.success = ep.summary.time_to_dock.has_value();
    ep.summary.final_distance = ep.trajectory.states.back().position().norm();
    ep.summary.steps = steps;
    return ep;
}

HillState reference_docking_state(const OrbitalContext& ctx) {
    const double x0 = 100.0;
    return HillState(x0, 0.0, 0.0, 0.0, -0.2 * ctx.mean_motion() * x0, 0.0);
}

SafeInitializer::SafeInitializer(const DockingConfig& cfg, const OrbitalContext&)
    : cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
}

// 53 random bits mapped onto [0, 1); independent of the standard library's
// distribution implementations so draws are reproducible across toolchains.
double SafeInitializer::uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

HillState SafeInitializer::next() {
    const double cos_polar = 2.0 * uniform() - 1.0;
    const double sin_polar = std::sqrt(std::max(0.0, 1.0 - cos_polar * cos_polar));
    const double azimuth = 2.0 * std::numbers::pi * uniform();
    const double r3_in = std::pow(cfg_.shell_inner, 3);
    const double r3_out = std::pow(cfg_.shell_outer, 3);
    const double radius = std::cbrt(r3_in + uniform() * (r3_out - r3_in));
    const Vec3 position = radius * Vec3(sin_polar * std::cos(azimuth),
                                        sin_polar * std::sin(azimuth), cos_polar);

    const double limit = cfg_.speed_limit(position.norm());
    Vec3 velocity;
    do {
        for (Eigen::Index i = 0; i < 3; ++i) {
            velocity[i] = cfg_.velocity_box * (2.0 * uniform() - 1.0);
        }
    } while (!(velocity.norm() <= limit));

    Vec6 v;
    v << position, velocity;
    return HillState(v);
}

HillState safe_random_initial_state(const DockingConfig& cfg, const OrbitalContext& ctx) {
    SafeInitializer init(cfg, ctx);
    return init.next();
}

SampledTrajectory load_trajectory_record(const std::filesystem::path& path) {
    return trajectory_from_record(read_file(path));
}

void save_trajectory_record(const std::filesystem::path& path, const SampledTrajectory& traj) {
    write_file_atomic(path, trajectory_to_record(traj));
}

std::string summary_to_json(const EpisodeSummary& summary) {
    nlohmann::json doc = {{"success", summary.success},
                          {"fuel", summary.fuel},
                          {"final_distance", summary.final_distance},
                          {"steps", summary.steps}};
    doc["time_to_dock"] =
        summary.time_to_dock ? nlohmann::json(*summary.time_to_dock) : nlohmann::json(nullptr);
    return doc.dump(1) + "\n";
}

}  // namespace hillsim
