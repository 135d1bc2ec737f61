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

#include "hillsim/cli.hpp"

#include "hillsim/cw_dynamics.hpp"
#include "hillsim/docking.hpp"
#include "hillsim/errors.hpp"
#include "hillsim/file_util.hpp"
#include "hillsim/kv_config.hpp"
#include "hillsim/scaling.hpp"
#include "hillsim/simulation.hpp"
#include "hillsim/trajectory_io.hpp"
#include "hillsim/waypoint_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <functional>
#include <set>

namespace hillsim::cli {

namespace {

using nlohmann::json;

struct OptionSpec {
    std::string name;
    std::string help;
    std::string fallback;  // empty means unset
    bool flag = false;
};

class Args {
public:
    Args(std::string command, std::map<std::string, std::string> values)
        : command_(std::move(command)), values_(std::move(values)) {}

    const std::string& command() const { return command_; }
    const std::map<std::string, std::string>& values() const { return values_; }

    const std::string& text(const std::string& name) const { return values_.at(name); }

    std::string required(const std::string& name) const {
        const std::string& value = text(name);
        if (value.empty()) {
            throw InputError(command_ + ": --" + name + " is required");
        }
        return value;
    }

    bool has(const std::string& name) const { return !text(name).empty(); }

    double number(const std::string& name) const {
        try {
            return parse_double(required(name), "--" + name);
        } catch (const SchemaError& e) {
            throw InputError(e.what());
        }
    }

    std::size_t count(const std::string& name) const {
        long long value = 0;
        try {
            value = parse_integer(required(name), "--" + name);
        } catch (const SchemaError& e) {
            throw InputError(e.what());
        }
        if (value < 0) {
            throw InputError("--" + name + " must be non-negative");
        }
        return static_cast<std::size_t>(value);
    }

    bool flag(const std::string& name) const { return text(name) == "true"; }

private:
    std::string command_;
    std::map<std::string, std::string> values_;
};

struct Outcome {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::optional<std::uint64_t> seed;
};

using Handler = std::function<void(const Args&, Outcome&, std::ostream&, std::ostream&)>;

struct CommandSpec {
    std::string name;
    std::string description;
    std::vector<OptionSpec> options;
    Handler handler;
};

std::uint64_t parse_seed(std::string_view text) {
    text = trim(text);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InputError("seed must be a non-negative integer, got '" + std::string(text) + "'");
    }
    return value;
}

void write_trajectory_as(const std::string& path, const SampledTrajectory& traj,
                         const std::string& format) {
    if (format == "auto") {
        write_trajectory(path, traj);
    } else if (format == "csv") {
        write_file_atomic(path, trajectory_to_csv(traj));
    } else if (format == "json") {
        write_file_atomic(path, trajectory_to_json_records(traj));
    } else if (format == "record") {
        write_file_atomic(path, trajectory_to_record(traj));
    } else {
        throw InputError("--format must be auto, csv, json or record, got '" + format + "'");
    }
}

const OptionSpec kFormatOption{
    "format", "output format: csv, json (records), record (trajectory record) or auto (by extension)",
    "auto"};

LabVolume volume_from(const Args& a) {
    LabVolume vol;
    vol.x_extent = a.number("x-extent");
    vol.y_extent = a.number("y-extent");
    vol.z_extent = a.number("z-extent");
    vol.validate();
    return vol;
}

std::vector<OptionSpec> volume_options() {
    return {{"x-extent", "flight volume length along x [m]", "4"},
            {"y-extent", "flight volume width along y [m]", "3"},
            {"z-extent", "flight volume height [m]", "2.5"}};
}

// ---- nmt-gen ---------------------------------------------------------------

void cmd_nmt_gen(const Args& a, Outcome& o, std::ostream& out, std::ostream&) {
    const OrbitalContext ctx(a.number("n"));
    const HillState ic = nmt_initial_conditions(a.number("x0"), a.number("vx0"), a.number("z0"),
                                                a.number("vz0"), ctx);
    const double periods = a.number("periods");
    if (!(periods > 0.0)) {
        throw InputError("--periods must be positive");
    }
    const std::size_t samples = a.count("samples");
    if (samples < 2) {
        throw InputError("--samples must be at least 2");
    }
    const double span = periods * ctx.period();
    SampledTrajectory traj;
    const std::string mode = a.text("mode");
    if (mode == "rk45") {
        IntegratorTolerance tol;
        tol.rel = a.number("rtol");
        tol.abs = a.number("atol");
        traj = propagate_continuous(ic, {}, ctx, 0.0, span, tol).sample_uniform(samples);
    } else if (mode == "discrete") {
        traj = propagate_discrete(ic, {}, ctx, span / static_cast<double>(samples - 1),
                                  samples - 1, TransitionMode::oracle);
    } else {
        throw InputError("--mode must be rk45 or discrete, got '" + mode + "'");
    }
    const std::string path = a.required("out");
    write_trajectory_as(path, traj, a.text("format"));
    o.outputs.push_back(path);
    out << "wrote " << traj.size() << " samples over " << format_double(span) << " s to " << path
        << "\n";
}

// ---- dock-gen --------------------------------------------------------------

void cmd_dock_gen(const Args& a, Outcome& o, std::ostream& out, std::ostream&) {
    const OrbitalContext ctx(a.number("n"), a.number("mass"));
    DockingConfig cfg;
    cfg.horizon = a.number("horizon");
    cfg.dt = a.number("dt");
    cfg.success_radius = a.number("success-radius");
    cfg.v_max = a.number("v-max");
    if (a.has("v-slope")) {
        cfg.distance_slope = a.number("v-slope");
    }
    cfg.shell_inner = a.number("shell-inner");
    cfg.shell_outer = a.number("shell-outer");
    cfg.seed = parse_seed(a.required("seed"));
    cfg.validate();
    o.seed = cfg.seed;

    ThrustPolicy policy;
    const std::string name = a.text("policy");
    if (name == "pd") {
        PdDockingGains gains;
        gains.kp = a.number("kp");
        gains.kd = a.number("kd");
        gains.thrust_cap = a.number("thrust-cap");
        policy = pd_docking_policy(ctx, gains);
    } else if (name == "zero") {
        policy = zero_policy(a.number("thrust-cap"));
    } else {
        throw InputError("--policy must be zero or pd, got '" + name + "'");
    }

    HillState ic;
    const std::string ic_kind = a.text("ic");
    if (ic_kind == "reference") {
        ic = reference_docking_state(ctx);
    } else if (ic_kind == "random") {
        ic = safe_random_initial_state(cfg, ctx);
    } else {
        throw InputError("--ic must be reference or random, got '" + ic_kind + "'");
    }

    const Episode ep = run_closed_loop(policy, ic, ctx, cfg);
    const std::string path = a.required("out");
    write_trajectory_as(path, ep.trajectory, a.text("format"));
    o.outputs.push_back(path);
    const std::string summary = summary_to_json(ep.summary);
    if (a.has("summary")) {
        write_file_atomic(a.text("summary"), summary);
        o.outputs.push_back(a.text("summary"));
    }
    out << summary;
}

// ---- scale -----------------------------------------------------------------

void cmd_scale(const Args& a, Outcome& o, std::ostream& out, std::ostream&) {
    const std::string in = a.required("in");
    o.inputs.push_back(in);
    const SampledTrajectory traj = read_trajectory(in);
    traj.validate();
    if (traj.empty()) {
        throw InputError("input trajectory is empty");
    }
    ScaleConfig cfg;
    cfg.distance_factor = a.number("distance-factor");
    cfg.sim_duration = a.number("duration");
    cfg.source_span =
        a.has("source-span") ? a.number("source-span") : traj.times.back() - traj.times.front();
    LabVolume vol;
    vol.z_offset = a.number("z-offset");
    const SampledTrajectory lab = scale_to_lab(traj, cfg, vol);
    const std::string path = a.required("out");
    write_trajectory_as(path, lab, a.text("format"));
    o.outputs.push_back(path);
    out << "time factor " << format_double(cfg.time_factor()) << ", wrote " << lab.size()
        << " lab samples to " << path << "\n";
}

// ---- waypoints -------------------------------------------------------------

constexpr std::size_t kListedViolations = 20;

void print_violations(std::ostream& err, const std::vector<BoundsViolation>& violations) {
    err << "index,axis,value\n";
    const std::size_t shown = std::min(violations.size(), kListedViolations);
    for (std::size_t i = 0; i < shown; ++i) {
        err << violations[i].index << "," << violations[i].axis << ","
            << format_double(violations[i].value) << "\n";
    }
    if (violations.size() > shown) {
        err << "... " << violations.size() - shown << " more (see --report)\n";
    }
}

void cmd_waypoints(const Args& a, Outcome& o, std::ostream& out, std::ostream& err) {
    const std::string in = a.required("in");
    o.inputs.push_back(in);
    const SampledTrajectory traj = read_trajectory(in);
    traj.validate();
    if (traj.empty()) {
        throw InputError("input trajectory is empty");
    }
    if (traj.frame != Frame::lab) {
        throw InputError("waypoints are resampled from a lab-frame trajectory; run scale first");
    }
    const double duration = a.has("duration") ? a.number("duration") : traj.times.back();
    const WaypointList wps = resample_waypoints(traj, a.number("rate"), duration);
    const auto violations = check_bounds(wps, volume_from(a));
    const std::string report = bounds_report(violations);
    if (a.has("report")) {
        write_file_atomic(a.text("report"), report);
        o.outputs.push_back(a.text("report"));
    }
    if (!violations.empty()) {
        err << violations.size() << " waypoint coordinates outside the flight volume:\n";
        print_violations(err, violations);
        if (!a.flag("force-bounds")) {
            throw BoundsError("waypoints leave the flight volume; rerun with --force-bounds to "
                              "write them anyway");
        }
    }
    const std::string path = a.required("out");
    write_waypoints(path, wps);
    o.outputs.push_back(path);
    out << "wrote " << wps.size() << " waypoints at " << format_double(wps.frequency)
        << " Hz to " << path << "\n";
}

// ---- simulate --------------------------------------------------------------

GainSet load_gains(const Args& a, const std::string& key, Outcome& o) {
    if (!a.has(key)) {
        return GainSet{};
    }
    o.inputs.push_back(a.text(key));
    return gains_from_config(KeyValueConfig::load(a.text(key)));
}

DroneParams load_params(const Args& a, const std::string& key, Outcome& o) {
    if (!a.has(key)) {
        return DroneParams{};
    }
    o.inputs.push_back(a.text(key));
    return drone_params_from_config(KeyValueConfig::load(a.text(key)));
}

SimConfig sim_config_from(const Args& a) {
    SimConfig cfg;
    cfg.control_rate = a.number("rate");
    cfg.physics_rate = a.number("physics-rate");
    cfg.duration = a.number("duration");
    cfg.yaw_reference = a.number("yaw-ref");
    cfg.volume = volume_from(a);
    cfg.force_bounds = a.flag("force-bounds");
    cfg.validate();
    return cfg;
}

std::vector<OptionSpec> sim_options() {
    std::vector<OptionSpec> opts = {
        {"rate", "control rate; must match the waypoint rate [Hz]", "48"},
        {"physics-rate", "plant integration rate, a multiple of --rate [Hz]", "240"},
        {"duration", "simulated time; 0 uses the waypoint span [s]", "0"},
        {"yaw-ref", "yaw reference [rad]", format_double(kDefaultYawReference)},
        {"force-bounds", "simulate even if waypoints leave the flight volume", "false", true}};
    for (auto& v : volume_options()) {
        opts.push_back(v);
    }
    return opts;
}

void cmd_simulate(const Args& a, Outcome& o, std::ostream& out, std::ostream& err) {
    const std::string wp_path = a.required("waypoints");
    const std::string log_path = a.required("out-log");
    const std::string metrics_path = a.required("out-metrics");
    o.inputs.push_back(wp_path);
    const WaypointList wps = read_waypoints(wp_path);
    const GainSet gains = load_gains(a, "gains", o);
    const DroneParams params = load_params(a, "params", o);
    const SimConfig cfg = sim_config_from(a);
    const auto violations = check_bounds(wps, cfg.volume);
    if (!violations.empty()) {
        err << violations.size() << " waypoint coordinates outside the flight volume:\n";
        print_violations(err, violations);
    }
    const SimLog log = run_tracking(wps, params, gains, cfg);
    const std::string metrics = metrics_to_json(compute_metrics(log));
    write_log(log_path, log);
    o.outputs.push_back(log_path);
    write_file_atomic(metrics_path, metrics);
    o.outputs.push_back(metrics_path);
    if (a.has("out-plot")) {
        write_file_atomic(a.text("out-plot"), plot_data_csv(log));
        o.outputs.push_back(a.text("out-plot"));
    }
    out << metrics;
}

// ---- swarm -----------------------------------------------------------------

std::string file_stem_for(const std::string& uri) {
    std::string stem = uri;
    for (char& c : stem) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                          (c >= '0' && c <= '9') || c == '-' || c == '.';
        if (!keep) {
            c = '_';
        }
    }
    return stem;
}

/*
 * Assignment document: a JSON object keyed by drone URI. Each value is either
 * a waypoint file path or {"waypoints": path, "gains": path, "params": path}.
 * Relative paths are resolved against the document's directory.
 */
SwarmAssignment load_assignment(const std::filesystem::path& path, Outcome& o) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw SchemaError("assignment document: " + std::string(e.what()));
    }
    if (!doc.is_object() || doc.empty()) {
        throw SchemaError("assignment document must be a non-empty object keyed by URI");
    }
    const std::filesystem::path base = path.parent_path();
    const auto resolve = [&](const json& field, const std::string& what) {
        if (!field.is_string()) {
            throw SchemaError("assignment document: '" + what + "' must be a path string");
        }
        const std::filesystem::path p(field.get<std::string>());
        const std::string resolved = (p.is_absolute() ? p : base / p).string();
        o.inputs.push_back(resolved);
        return resolved;
    };

    SwarmAssignment assignment;
    for (const auto& [uri, entry] : doc.items()) {
        SwarmMember member;
        member.uri = uri;
        if (entry.is_string()) {
            member.waypoints = read_waypoints(resolve(entry, uri));
        } else if (entry.is_object()) {
            if (!entry.contains("waypoints")) {
                throw SchemaError("assignment for '" + uri + "' has no 'waypoints'");
            }
            member.waypoints = read_waypoints(resolve(entry["waypoints"], uri + ".waypoints"));
            if (entry.contains("gains")) {
                member.gains = gains_from_config(
                    KeyValueConfig::load(resolve(entry["gains"], uri + ".gains")));
            }
            if (entry.contains("params")) {
                member.params = drone_params_from_config(
                    KeyValueConfig::load(resolve(entry["params"], uri + ".params")));
            }
        } else {
            throw SchemaError("assignment for '" + uri + "' must be a path or an object");
        }
        assignment.push_back(std::move(member));
    }
    return assignment;
}

void cmd_swarm(const Args& a, Outcome& o, std::ostream& out, std::ostream&) {
    const std::string doc_path = a.required("manifest");
    o.inputs.push_back(doc_path);
    const SwarmAssignment assignment = load_assignment(doc_path, o);
    const SimConfig cfg = sim_config_from(a);
    const std::filesystem::path dir = a.required("out-dir");

    std::set<std::string> stems;
    for (const auto& m : assignment) {
        if (!stems.insert(file_stem_for(m.uri)).second) {
            throw AssignmentError("URIs map to the same output file name: " + m.uri);
        }
    }
    const auto logs = run_swarm(assignment, cfg, !a.flag("serial"));

    std::filesystem::create_directories(dir);
    json summary = json::object();
    for (const auto& [uri, log] : logs) {
        const std::string stem = file_stem_for(uri);
        const std::string log_path = (dir / (stem + ".log.csv")).string();
        const std::string metrics_path = (dir / (stem + ".metrics.json")).string();
        const std::string metrics = metrics_to_json(compute_metrics(log));
        write_log(log_path, log);
        write_file_atomic(metrics_path, metrics);
        o.outputs.push_back(log_path);
        o.outputs.push_back(metrics_path);
        summary[uri] = json::parse(metrics);
    }
    const std::string summary_path = (dir / "swarm_metrics.json").string();
    const std::string text = summary.dump(1) + "\n";
    write_file_atomic(summary_path, text);
    o.outputs.push_back(summary_path);
    out << text;
}

// ---- validate-bk -----------------------------------------------------------

void cmd_validate_bk(const Args& a, Outcome& o, std::ostream& out, std::ostream&) {
    const OrbitalContext ctx(a.number("n"), a.number("mass"));
    const std::string report = input_transition_report(ctx, a.number("dt"), a.number("threshold"));
    if (a.has("out")) {
        write_file_atomic(a.text("out"), report);
        o.outputs.push_back(a.text("out"));
    }
    out << report;
}

bool looks_numeric(const std::string& text) {
    if (text.empty()) {
        return false;
    }
    char* end = nullptr;
    std::strtod(text.c_str(), &end);
    return *end == '\0';
}

std::vector<CommandSpec> command_table() {
    const std::string n_help = "chief mean motion [rad/s]";
    const std::string n_default = format_double(kEarthMeanMotion);
    std::vector<CommandSpec> table;

    table.push_back({"nmt-gen",
                     "Propagate a natural motion trajectory from closed-ellipse initial conditions",
                     {{"x0", "initial radial offset [m]", "0"},
                      {"vx0", "initial radial velocity [m/s]", "0"},
                      {"z0", "initial cross-track offset [m]", "0"},
                      {"vz0", "initial cross-track velocity [m/s]", "0"},
                      {"n", n_help, n_default},
                      {"periods", "propagation length in orbital periods [-]", "1"},
                      {"samples", "evenly spaced output samples [-]", "1000"},
                      {"mode", "propagator: rk45 or discrete (exact zero-order hold)", "rk45"},
                      {"rtol", "RK45 relative tolerance [-]", "1e-9"},
                      {"atol", "RK45 absolute tolerance [m, m/s]", "1e-12"},
                      kFormatOption,
                      {"out", "space-frame trajectory output path", ""}},
                     cmd_nmt_gen});

    table.push_back({"dock-gen",
                     "Run a thrust policy in closed loop and record the docking trajectory",
                     {{"policy", "thrust policy: zero or pd", "pd"},
                      {"ic", "initial state: reference (100 m radial) or random (seeded safe draw)",
                       "reference"},
                      {"seed", "sampler seed [-]; falls back to HILLSIM_SEED, then 0", ""},
                      {"horizon", "episode length [s]", "10"},
                      {"dt", "control step [s]", "0.1"},
                      {"success-radius", "docking radius around the chief [m]", "0.5"},
                      {"v-max", "initial speed limit [m/s]", "0.2"},
                      {"v-slope", "distance-dependent speed limit slope [1/s]; empty disables", ""},
                      {"shell-inner", "inner radius of the initial-position shell [m]", "50"},
                      {"shell-outer", "outer radius of the initial-position shell [m]", "150"},
                      {"kp", "pd policy position gain [1/s^2]", "1"},
                      {"kd", "pd policy velocity gain [1/s]", "2"},
                      {"thrust-cap", "thrust magnitude limit [N]", "100"},
                      {"n", n_help, n_default},
                      {"mass", "deputy mass [kg]", "1"},
                      kFormatOption,
                      {"summary", "episode summary JSON output path", ""},
                      {"out", "space-frame trajectory output path", ""}},
                     cmd_dock_gen});

    table.push_back({"scale",
                     "Map a space-frame trajectory into the lab flight volume",
                     {{"in", "space-frame trajectory input path", ""},
                      {"distance-factor", "space distance per lab distance [-]", "4000"},
                      {"duration", "lab flight duration [s]", "10"},
                      {"source-span", "space time mapped onto the flight [s]; default: input span",
                       ""},
                      {"z-offset", "lab altitude of the chief [m]", "1"},
                      kFormatOption,
                      {"out", "lab-frame trajectory output path", ""}},
                     cmd_scale});

    std::vector<OptionSpec> wp_opts = {
        {"in", "lab-frame trajectory input path", ""},
        {"rate", "waypoint rate [Hz]", "48"},
        {"duration", "resampled span [s]; default: the input's final time", ""},
        {"report", "bounds report output path", ""},
        {"force-bounds", "write the waypoints even if some leave the flight volume", "false", true},
        {"out", "waypoint output path (.csv or .json)", ""}};
    for (auto& v : volume_options()) {
        wp_opts.push_back(v);
    }
    table.push_back({"waypoints", "Resample a lab trajectory into fixed-rate waypoints",
                     wp_opts, cmd_waypoints});

    std::vector<OptionSpec> sim_opts = {
        {"waypoints", "waypoint input path", ""},
        {"gains", "controller gain file (key = value)", ""},
        {"params", "drone parameter file (key = value)", ""},
        {"out-log", "simulation log output path (.csv or .json)", ""},
        {"out-metrics", "tracking metrics JSON output path", ""},
        {"out-plot", "plot data CSV output path", ""}};
    for (auto& v : sim_options()) {
        sim_opts.push_back(v);
    }
    table.push_back({"simulate", "Track waypoints with the linearized quadrotor", sim_opts,
                     cmd_simulate});

    std::vector<OptionSpec> swarm_opts = {
        {"manifest", "assignment document mapping drone URIs to waypoint files", ""},
        {"out-dir", "directory for per-drone logs and metrics", ""},
        {"serial", "simulate members one after another", "false", true}};
    for (auto& v : sim_options()) {
        swarm_opts.push_back(v);
    }
    table.push_back({"swarm", "Simulate several drones, each on its own waypoint file",
                     swarm_opts, cmd_swarm});

    table.push_back({"validate-bk",
                     "Compare the published input transition matrix with the quadrature oracle",
                     {{"n", n_help, n_default},
                      {"dt", "step [s]", "1"},
                      {"mass", "deputy mass [kg]", "1"},
                      {"threshold", "listing threshold on elementwise difference [s^2/kg, s/kg]",
                       "1e-6"},
                      {"out", "report output path", ""}},
                     cmd_validate_bk});
    return table;
}

std::optional<std::string> env_seed() {
    if (const char* value = std::getenv("HILLSIM_SEED"); value != nullptr && *value != '\0') {
        return std::string(value);
    }
    return std::nullopt;
}

int report_error(std::ostream& err, const std::exception& e, int code) {
    err << "error: " << e.what() << "\n";
    return code;
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int rerun(const std::string& path, std::ostream& out, std::ostream& err) {
    const RunManifest manifest = RunManifest::from_json(read_file(path));
    if (manifest.tool_version != kToolVersion) {
        throw ConfigError("manifest was written by version " + manifest.tool_version +
                          ", this is " + std::string(kToolVersion));
    }
    const auto table = command_table();
    const auto spec = std::find_if(table.begin(), table.end(),
                                   [&](const CommandSpec& c) { return c.name == manifest.command; });
    if (spec == table.end()) {
        throw SchemaError("manifest names unknown command '" + manifest.command + "'");
    }
    std::vector<std::string> args{manifest.command};
    for (const auto& [key, value] : manifest.config) {
        const auto opt = std::find_if(spec->options.begin(), spec->options.end(),
                                      [&](const OptionSpec& s) { return s.name == key; });
        if (opt == spec->options.end()) {
            throw SchemaError("manifest option '" + key + "' is not accepted by " +
                              manifest.command);
        }
        if (opt->flag) {
            if (value == "true") {
                args.push_back("--" + key);
            }
        } else if (!value.empty()) {
            args.push_back("--" + key + "=" + value);
        }
    }
    return execute(args, out, err);
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const std::vector<CommandSpec> table = command_table();

    CLI::App app{"HillSim: Clohessy-Wiltshire relative motion flown by a quadrotor surrogate",
                 "hillsim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::map<std::string, bool>> flags;
    std::map<std::string, std::string> config_paths;
    std::map<std::string, CLI::App*> subs;
    for (const auto& spec : table) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.description);
        sub->add_option("--config", config_paths[spec.name],
                        "key = value file supplying option values (keys are option names)");
        for (const auto& opt : spec.options) {
            if (opt.flag) {
                sub->add_flag("--" + opt.name, flags[spec.name][opt.name], opt.help);
            } else {
                std::string help = opt.help;
                if (!opt.fallback.empty()) {
                    help += " (default " + opt.fallback + ")";
                }
                CLI::Option* o = sub->add_option("--" + opt.name, values[spec.name][opt.name], help);
                if (looks_numeric(opt.fallback)) {
                    o->type_name("NUMBER");
                }
            }
        }
        subs[spec.name] = sub;
    }
    CLI::App* rerun_cmd =
        app.add_subcommand("rerun", "Replay a run from the manifest written next to its outputs");
    std::string rerun_manifest;
    rerun_cmd->add_option("--manifest", rerun_manifest, "run manifest path")->required();

    std::vector<const char*> argv{"hillsim"};
    for (const auto& arg : args) {
        argv.push_back(arg.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (rerun_cmd->parsed()) {
            return rerun(rerun_manifest, out, err);
        }
        const auto spec = std::find_if(table.begin(), table.end(),
                                       [&](const CommandSpec& c) { return subs[c.name]->parsed(); });
        CLI::App* sub = subs[spec->name];

        KeyValueConfig overrides;
        Outcome outcome;
        if (!config_paths[spec->name].empty()) {
            overrides = KeyValueConfig::load(config_paths[spec->name]);
            std::set<std::string> known;
            for (const auto& opt : spec->options) {
                known.insert(opt.name);
            }
            overrides.require_known_keys(known, spec->name + " config");
            outcome.inputs.push_back(config_paths[spec->name]);
        }

        std::map<std::string, std::string> resolved;
        for (const auto& opt : spec->options) {
            const bool explicit_flag = sub->count("--" + opt.name) > 0;
            if (opt.flag) {
                const bool on = explicit_flag ? flags[spec->name][opt.name]
                                              : overrides.get_bool_or(opt.name, opt.fallback == "true");
                resolved[opt.name] = on ? "true" : "false";
            } else if (explicit_flag) {
                resolved[opt.name] = values[spec->name][opt.name];
            } else {
                resolved[opt.name] = overrides.get(opt.name).value_or(opt.fallback);
            }
        }
        if (resolved.count("seed") != 0 && resolved["seed"].empty()) {
            resolved["seed"] = env_seed().value_or("0");
        }

        const Args parsed(spec->name, resolved);
        spec->handler(parsed, outcome, out, err);

        RunManifest manifest;
        manifest.command = spec->name;
        manifest.config = resolved;
        manifest.inputs = outcome.inputs;
        manifest.outputs = outcome.outputs;
        manifest.seed = outcome.seed;
        const std::string doc = manifest.to_json();
        for (const auto& output : outcome.outputs) {
            write_file_atomic(manifest_path(output), doc);
        }
        return kExitOk;
    } catch (const InputError& e) {
        return report_error(err, e, kExitValidation);
    } catch (const std::domain_error& e) {
        return report_error(err, e, kExitValidation);
    } catch (const std::exception& e) {
        return report_error(err, e, kExitRuntime);
    }
}

}  // namespace

std::string RunManifest::to_json() const {
    json doc = {{"command", command},
                {"config", config},
                {"inputs", inputs},
                {"outputs", outputs},
                {"tool_version", tool_version}};
    doc["seed"] = seed ? json(*seed) : json(nullptr);
    return doc.dump(1) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
    try {
        const json doc = json::parse(text);
        RunManifest m;
        m.command = doc.at("command").get<std::string>();
        m.config = doc.at("config").get<std::map<std::string, std::string>>();
        m.inputs = doc.value("inputs", std::vector<std::string>{});
        m.outputs = doc.value("outputs", std::vector<std::string>{});
        if (doc.contains("seed") && !doc["seed"].is_null()) {
            m.seed = doc["seed"].get<std::uint64_t>();
        }
        m.tool_version = doc.at("tool_version").get<std::string>();
        return m;
    } catch (const json::exception& e) {
        throw SchemaError("run manifest: " + std::string(e.what()));
    }
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
    return output.string() + ".manifest.json";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return execute(args, out, err);
    } catch (const std::exception& e) {
        return report_error(err, e, kExitRuntime);
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

}  // namespace hillsim::cli
