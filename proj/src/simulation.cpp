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

#include "hillsim/simulation.hpp"

#include "hillsim/errors.hpp"
#include "hillsim/file_util.hpp"

#include <json.hpp>

#include <cmath>
#include <future>
#include <set>
#include <sstream>

namespace hillsim {

namespace {

using nlohmann::json;

json vec_json(const Vec3& v) {
    return {{"x", v.x()}, {"y", v.y()}, {"z", v.z()}};
}

}  // namespace

void SimConfig::validate() const {
    if (!(control_rate > 0.0) || !std::isfinite(control_rate)) {
        throw ConfigError("control rate must be positive");
    }
    if (!(physics_rate > 0.0) || !std::isfinite(physics_rate)) {
        throw ConfigError("physics rate must be positive");
    }
    if (!(duration >= 0.0) || !std::isfinite(duration)) {
        throw ConfigError("duration must be non-negative");
    }
    substeps();
}

std::size_t SimConfig::substeps() const {
    const double ratio = physics_rate / control_rate;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio) {
        throw ConfigError("physics rate must be an integer multiple of the control rate");
    }
    return static_cast<std::size_t>(rounded);
}

std::vector<PositionTarget> reference_targets(const WaypointList& wps) {
    const std::size_t n = wps.size();
    std::vector<PositionTarget> out(n);
    const double f = wps.frequency;
    for (std::size_t k = 0; k < n; ++k) {
        out[k].position = wps.positions[k];
    }
    if (n < 2) {
        return out;
    }
    out.front().velocity = (wps.positions[1] - wps.positions[0]) * f;
    out.back().velocity = (wps.positions[n - 1] - wps.positions[n - 2]) * f;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        out[k].velocity = (wps.positions[k + 1] - wps.positions[k - 1]) * (0.5 * f);
        out[k].acceleration =
            (wps.positions[k + 1] - 2.0 * wps.positions[k] + wps.positions[k - 1]) * (f * f);
    }
    if (n >= 3) {
        out.front().acceleration = out[1].acceleration;
        out.back().acceleration = out[n - 2].acceleration;
    }
    return out;
}

SimLog run_tracking(const WaypointList& wps, const DroneParams& params, const GainSet& gains,
                    const SimConfig& cfg) {
    if (wps.empty()) {
        throw InputError("run_tracking: waypoint list is empty");
    }
    cfg.validate();
    gains.validate();
    if (std::abs(wps.frequency - cfg.control_rate) > 1e-9 * cfg.control_rate) {
        std::ostringstream msg;
        msg << "waypoint frequency " << wps.frequency << " Hz does not match control rate "
            << cfg.control_rate << " Hz";
        throw ConfigError(msg.str());
    }
    if (!cfg.force_bounds) {
        const auto violations = check_bounds(wps, cfg.volume);
        if (!violations.empty()) {
            std::ostringstream msg;
            msg << violations.size() << " waypoint bound violation(s), first at index "
                << violations.front().index << " axis " << violations.front().axis;
            throw BoundsError(msg.str());
        }
    }

    const double duration =
        cfg.duration > 0.0 ? cfg.duration : static_cast<double>(wps.size()) / wps.frequency;
    const std::size_t steps = waypoint_count(cfg.control_rate, duration);
    const std::size_t substeps = cfg.substeps();
    const double control_dt = 1.0 / cfg.control_rate;
    const double physics_dt = 1.0 / cfg.physics_rate;

    const PlantModel model = build_subsystems(params);
    const std::vector<PositionTarget> targets = reference_targets(wps);

    DroneState state;
    if (cfg.initial_state) {
        state = *cfg.initial_state;
    } else {
        state.position = wps.positions.front();
        state.attitude = Vec3(0.0, 0.0, wrap_angle(cfg.yaw_reference));
    }

    SimLog log;
    log.control_rate = cfg.control_rate;
    log.steps.reserve(steps);
    ControllerState ctrl;
    for (std::size_t k = 0; k < steps; ++k) {
        // Past the end of the list the last waypoint is held as a stationary target.
        PositionTarget target;
        if (k < targets.size()) {
            target = targets[k];
        } else {
            target.position = wps.positions.back();
        }
        const ControlOutput out =
            control_step(state, target, cfg.yaw_reference, gains, params, ctrl, control_dt);
        log.steps.push_back({static_cast<double>(k) * control_dt, target.position, state,
                             out.command, out.total_thrust});
        ctrl = out.state;
        for (std::size_t i = 0; i < substeps; ++i) {
            state = step_plant(model, state, out.command, physics_dt);
        }
    }
    return log;
}

std::map<std::string, SimLog> run_swarm(const SwarmAssignment& assignment, const SimConfig& cfg,
                                        bool parallel) {
    std::set<std::string> seen;
    for (const auto& member : assignment) {
        if (!seen.insert(member.uri).second) {
            throw AssignmentError("duplicate drone URI '" + member.uri + "'");
        }
    }
    std::map<std::string, SimLog> out;
    if (!parallel) {
        for (const auto& m : assignment) {
            out.emplace(m.uri, run_tracking(m.waypoints, m.params, m.gains, cfg));
        }
        return out;
    }
    std::vector<std::future<SimLog>> jobs;
    jobs.reserve(assignment.size());
    for (const auto& m : assignment) {
        jobs.push_back(std::async(std::launch::async, [&m, &cfg] {
            return run_tracking(m.waypoints, m.params, m.gains, cfg);
        }));
    }
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        out.emplace(assignment[i].uri, jobs[i].get());
    }
    return out;
}

TrackingMetrics compute_metrics(const SimLog& log) {
    if (log.empty()) {
        throw InputError("compute_metrics: log is empty");
    }
    TrackingMetrics m;
    Vec3 sum_sq = Vec3::Zero();
    for (const SimStep& step : log.steps) {
        const Vec3 err = (step.waypoint - step.state.position).cwiseAbs();
        sum_sq += err.cwiseProduct(err);
        m.max = m.max.cwiseMax(err);
    }
    m.rms = (sum_sq / static_cast<double>(log.size())).cwiseSqrt();
    // Rounding can leave the RMS of a constant-magnitude error an ulp above its max.
    m.rms = m.rms.cwiseMin(m.max);
    const SimStep& last = log.steps.back();
    m.final_error = (last.waypoint - last.state.position).norm();
    return m;
}

std::string log_to_csv(const SimLog& log) {
    std::string out = "t,wx,wy,wz,x,y,z,fz,mx,my,mz\n";
    for (const SimStep& s : log.steps) {
        const double fields[] = {s.time,
                                 s.waypoint.x(),
                                 s.waypoint.y(),
                                 s.waypoint.z(),
                                 s.state.position.x(),
                                 s.state.position.y(),
                                 s.state.position.z(),
                                 s.command.thrust_delta,
                                 s.command.moment.x(),
                                 s.command.moment.y(),
                                 s.command.moment.z()};
        for (std::size_t i = 0; i < std::size(fields); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += format_double(fields[i]);
        }
        out += '\n';
    }
    return out;
}

std::string log_to_json(const SimLog& log) {
    json arr = json::array();
    for (const SimStep& s : log.steps) {
        arr.push_back({{"t", s.time},
                       {"wx", s.waypoint.x()},
                       {"wy", s.waypoint.y()},
                       {"wz", s.waypoint.z()},
                       {"x", s.state.position.x()},
                       {"y", s.state.position.y()},
                       {"z", s.state.position.z()},
                       {"fz", s.command.thrust_delta},
                       {"mx", s.command.moment.x()},
                       {"my", s.command.moment.y()},
                       {"mz", s.command.moment.z()},
                       {"thrust", s.total_thrust},
                       {"velocity", vec_json(s.state.velocity)},
                       {"attitude", {s.state.attitude.x(), s.state.attitude.y(), s.state.attitude.z()}},
                       {"rates", {s.state.rates.x(), s.state.rates.y(), s.state.rates.z()}}});
    }
    json doc = {{"control_rate_hz", log.control_rate}, {"steps", std::move(arr)}};
    return doc.dump(1) + "\n";
}

std::string metrics_to_json(const TrackingMetrics& metrics) {
    json doc = {{"rms", vec_json(metrics.rms)},
                {"max", vec_json(metrics.max)},
                {"final_error", metrics.final_error}};
    return doc.dump(1) + "\n";
}

std::string plot_data_csv(const SimLog& log) {
    std::string out = "t,wx,x,wy,y,wz,z\n";
    for (const SimStep& s : log.steps) {
        out += format_double(s.time);
        for (Eigen::Index i = 0; i < 3; ++i) {
            out += ',';
            out += format_double(s.waypoint[i]);
            out += ',';
            out += format_double(s.state.position[i]);
        }
        out += '\n';
    }
    return out;
}

void write_log(const std::filesystem::path& path, const SimLog& log) {
    const std::string ext = path.extension().string();
    if (ext == ".json") {
        write_file_atomic(path, log_to_json(log));
    } else if (ext == ".csv") {
        write_file_atomic(path, log_to_csv(log));
    } else {
        throw InputError("log output '" + path.string() + "' must end in .csv or .json");
    }
}

}  // namespace hillsim
