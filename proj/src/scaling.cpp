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

#include "hillsim/scaling.hpp"

#include "hillsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hillsim {

void ScaleConfig::validate() const {
    if (!(distance_factor > 0.0) || !std::isfinite(distance_factor)) {
        throw ConfigError("distance factor must be positive");
    }
    if (!(sim_duration > 0.0) || !std::isfinite(sim_duration)) {
        throw ConfigError("simulation duration must be positive");
    }
    if (!(source_span > 0.0) || !std::isfinite(source_span)) {
        throw ConfigError("source span must be positive");
    }
}

void LabVolume::validate() const {
    if (!(x_extent > 0.0) || !(y_extent > 0.0) || !(z_extent > 0.0)) {
        throw ConfigError("lab volume extents must be positive");
    }
    if (!(z_offset > 0.0) || !(z_offset < z_extent)) {
        throw ConfigError("z offset must lie strictly inside (0, z_extent)");
    }
}

std::size_t waypoint_count(double frequency, double duration) {
    if (!(frequency > 0.0) || !(duration > 0.0)) {
        throw InputError("waypoint frequency and duration must be positive");
    }
    return static_cast<std::size_t>(std::llround(frequency * duration));
}

SampledTrajectory scale_to_lab(const SampledTrajectory& traj, const ScaleConfig& cfg,
                               const LabVolume& vol) {
    if (traj.frame != Frame::space) {
        throw InputError("scale_to_lab expects a space-frame trajectory");
    }
    cfg.validate();
    const double df = cfg.distance_factor;
    const double tf = cfg.time_factor();
    const double vel_scale = tf / df;

    SampledTrajectory out;
    out.frame = Frame::lab;
    out.times.reserve(traj.size());
    out.states.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out.times.push_back(traj.times[i] / tf);
        const Vec6& s = traj.states[i].vec;
        out.states.emplace_back(s[0] / df, s[1] / df, s[2] / df + vol.z_offset, s[3] * vel_scale,
                                s[4] * vel_scale, s[5] * vel_scale);
    }
    return out;
}

SampledTrajectory unscale_to_space(const SampledTrajectory& traj, const ScaleConfig& cfg,
                                   const LabVolume& vol) {
    if (traj.frame != Frame::lab) {
        throw InputError("unscale_to_space expects a lab-frame trajectory");
    }
    cfg.validate();
    const double df = cfg.distance_factor;
    const double tf = cfg.time_factor();
    const double vel_scale = df / tf;

    SampledTrajectory out;
    out.frame = Frame::space;
    out.times.reserve(traj.size());
    out.states.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out.times.push_back(traj.times[i] * tf);
        const Vec6& s = traj.states[i].vec;
        out.states.emplace_back(s[0] * df, s[1] * df, (s[2] - vol.z_offset) * df,
                                s[3] * vel_scale, s[4] * vel_scale, s[5] * vel_scale);
    }
    return out;
}

WaypointList resample_waypoints(const SampledTrajectory& traj, double frequency,
                                double duration) {
    traj.validate();
    const std::size_t count = waypoint_count(frequency, duration);
    if (count == 0) {
        throw InputError("frequency * duration rounds to zero waypoints");
    }
    const double slack = 1e-9 * std::max(1.0, duration);
    const double t_first = traj.times.front();
    const double t_last = traj.times.back();
    if (t_first > slack || t_last < duration - slack) {
        std::ostringstream msg;
        msg << "trajectory span [" << t_first << ", " << t_last << "] s does not cover [0, "
            << duration << "] s";
        throw CoverageError(msg.str());
    }

    WaypointList wps;
    wps.frequency = frequency;
    wps.positions.reserve(count);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < count; ++k) {
        // Clamped so the slack above never turns into extrapolation.
        const double t = std::clamp(static_cast<double>(k) / frequency, t_first, t_last);
        while (seg + 1 < traj.size() && traj.times[seg + 1] <= t) {
            ++seg;
        }
        const Vec3 p0 = traj.states[seg].position();
        if (seg + 1 == traj.size() || t == traj.times[seg]) {
            wps.positions.push_back(p0);
            continue;
        }
        const Vec3 p1 = traj.states[seg + 1].position();
        const double alpha = (t - traj.times[seg]) / (traj.times[seg + 1] - traj.times[seg]);
        wps.positions.push_back(p0 + alpha * (p1 - p0));
    }
    return wps;
}

std::vector<BoundsViolation> check_bounds(const WaypointList& wps, const LabVolume& vol) {
    std::vector<BoundsViolation> out;
    const double hx = 0.5 * vol.x_extent;
    const double hy = 0.5 * vol.y_extent;
    for (std::size_t k = 0; k < wps.size(); ++k) {
        const Vec3& p = wps.positions[k];
        if (!(std::abs(p.x()) <= hx)) {
            out.push_back({k, 'x', p.x()});
        }
        if (!(std::abs(p.y()) <= hy)) {
            out.push_back({k, 'y', p.y()});
        }
        if (!(p.z() >= 0.0 && p.z() <= vol.z_extent)) {
            out.push_back({k, 'z', p.z()});
        }
    }
    return out;
}

}  // namespace hillsim
