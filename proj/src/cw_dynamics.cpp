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

#include "hillsim/cw_dynamics.hpp"

#include "hillsim/errors.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace hillsim {

// ----------------------------------------------------------------------------
// Types
// ----------------------------------------------------------------------------

OrbitalContext::OrbitalContext(double mean_motion, double deputy_mass)
    : mean_motion_(mean_motion), deputy_mass_(deputy_mass) {
    if (!(mean_motion > 0.0) || !std::isfinite(mean_motion)) {
        throw InputError("OrbitalContext: mean motion must be positive and finite");
    }
    if (!(deputy_mass > 0.0) || !std::isfinite(deputy_mass)) {
        throw InputError("OrbitalContext: deputy mass must be positive and finite");
    }
}

double OrbitalContext::period() const {
    return 2.0 * std::numbers::pi / mean_motion_;
}

std::string_view to_string(TransitionMode mode) {
    return mode == TransitionMode::published ? "published" : "oracle";
}

TransitionMode parse_transition_mode(std::string_view text) {
    if (text == "published") {
        return TransitionMode::published;
    }
    if (text == "oracle") {
        return TransitionMode::oracle;
    }
    throw InputError("unknown transition mode '" + std::string(text) + "'");
}

std::string_view to_string(Frame frame) {
    return frame == Frame::space ? "space" : "lab";
}

Frame parse_frame(std::string_view text) {
    if (text == "space") {
        return Frame::space;
    }
    if (text == "lab") {
        return Frame::lab;
    }
    throw SchemaError("unknown frame tag '" + std::string(text) + "'");
}

void SampledTrajectory::validate() const {
    if (times.empty()) {
        throw InputError("trajectory is empty");
    }
    if (times.size() != states.size()) {
        throw InputError("trajectory times and states differ in length");
    }
    if (!(times.front() >= 0.0)) {
        throw InputError("trajectory must start at a non-negative time");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !states[i].is_finite()) {
            throw InputError("trajectory sample " + std::to_string(i) + " is not finite");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw InputError("trajectory times not strictly increasing at index " +
                             std::to_string(i));
        }
    }
}

// ----------------------------------------------------------------------------
// Continuous model
// ----------------------------------------------------------------------------

LinearSystem build_continuous_system(const OrbitalContext& ctx) {
    const double n = ctx.mean_motion();
    LinearSystem sys;
    sys.A(0, 3) = 1.0;
    sys.A(1, 4) = 1.0;
    sys.A(2, 5) = 1.0;
    sys.A(3, 0) = 3.0 * n * n;
    sys.A(3, 4) = 2.0 * n;
    sys.A(4, 3) = -2.0 * n;
    sys.A(5, 2) = -n * n;

    const double inv_m = 1.0 / ctx.deputy_mass();
    sys.B(3, 0) = inv_m;
    sys.B(4, 1) = inv_m;
    sys.B(5, 2) = inv_m;
    return sys;
}

Vec6 cw_derivative(const HillState& s, const ControlThrust& u, const OrbitalContext& ctx) {
    const LinearSystem sys = build_continuous_system(ctx);
    return sys.A * s.vec + sys.B * u.force;
}

SampledTrajectory ContinuousTrajectory::knots() const {
    SampledTrajectory out;
    out.frame = Frame::space;
    out.times = dense_.knot_times();
    out.states.reserve(out.times.size());
    for (const Vec6& y : dense_.knot_states()) {
        out.states.emplace_back(y);
    }
    return out;
}

SampledTrajectory ContinuousTrajectory::sample(std::span<const double> times) const {
    const double slack = 1e-12 * std::max(1.0, std::abs(t_end()));
    SampledTrajectory out;
    out.frame = Frame::space;
    out.times.reserve(times.size());
    out.states.reserve(times.size());
    for (const double t : times) {
        if (t < t_begin() - slack || t > t_end() + slack) {
            std::ostringstream msg;
            msg << "sample time " << t << " outside solved span [" << t_begin() << ", "
                << t_end() << "]";
            throw CoverageError(msg.str());
        }
        out.times.push_back(t);
        out.states.push_back(at(t));
    }
    return out;
}

SampledTrajectory ContinuousTrajectory::sample_uniform(std::size_t count) const {
    if (count == 0) {
        throw InputError("sample_uniform: count must be at least 1");
    }
    std::vector<double> times(count, t_begin());
    if (count > 1) {
        const double span = t_end() - t_begin();
        for (std::size_t i = 1; i + 1 < count; ++i) {
            times[i] = t_begin() + span * static_cast<double>(i) / static_cast<double>(count - 1);
        }
        times.back() = t_end();
    }
    return sample(times);
}

ContinuousTrajectory propagate_continuous(const HillState& ic, const ThrustSchedule& thrust,
                                          const OrbitalContext& ctx, double t_begin,
                                          double t_end, const IntegratorTolerance& tol) {
    if (!(t_end >= t_begin)) {
        throw InputError("propagate_continuous: time span must be increasing");
    }
    if (!(tol.rel > 0.0) || !(tol.abs > 0.0)) {
        throw InputError("propagate_continuous: tolerances must be positive");
    }
    const LinearSystem sys = build_continuous_system(ctx);
    const OdeRhs rhs = [&](double t, const Vec6& y) -> Vec6 {
        Vec6 dy = sys.A * y;
        if (thrust) {
            dy += sys.B * thrust(t).force;
        }
        return dy;
    };
    OdeOptions options;
    options.rel_tol = tol.rel;
    options.abs_tol = tol.abs;
    options.initial_step = tol.initial_step > 0.0 ? tol.initial_step : ctx.period() / 1e4;
    return ContinuousTrajectory(integrate_dopri5(rhs, t_begin, t_end, ic.vec, options));
}

// ----------------------------------------------------------------------------
// Discrete model
// ----------------------------------------------------------------------------

namespace {

Mat6 literal_state_transition(double n, double t) {
    const double nt = n * t;
    const double c = std::cos(nt);
    const double s = std::sin(nt);
    Mat6 Ak = Mat6::Zero();
    Ak(0, 0) = 4.0 - 3.0 * c;
    Ak(0, 3) = s / n;
    Ak(0, 4) = 2.0 / n * (1.0 - c);
    Ak(1, 0) = 6.0 * (s - nt);
    Ak(1, 1) = 1.0;
    Ak(1, 3) = -2.0 / n * (1.0 - c);
    Ak(1, 4) = (4.0 * s - 3.0 * nt) / n;
    Ak(2, 2) = c;
    Ak(2, 5) = s / n;
    Ak(3, 0) = 3.0 * n * s;
    Ak(3, 3) = c;
    Ak(3, 4) = 2.0 * s;
    Ak(4, 0) = -6.0 * n * (1.0 - c);
    Ak(4, 3) = -2.0 * s;
    Ak(4, 4) = 4.0 * c - 3.0;
    Ak(5, 2) = -n * s;
    Ak(5, 5) = c;
    return Ak;
}

// Entries as published, per unit acceleration. Three of them ([0][0], [0][1]
// and [4][1]) disagree with the zero-order-hold integral; the validation
// report surfaces this.
Mat63 literal_input_transition(double n, double t) {
    const double nt = n * t;
    const double c = std::cos(nt);
    const double s = std::sin(nt);
    Mat63 Bk = Mat63::Zero();
    Bk(0, 0) = (c - 1.0) / n;
    Bk(0, 1) = 2.0 / n * (t + s / n);
    Bk(1, 0) = -2.0 / n * (t - s / n);
    Bk(1, 1) = (-4.0 / n * (c - 1.0) - 1.5 * n * t * t) / n;
    Bk(2, 2) = -(c - 1.0) / (n * n);
    Bk(3, 0) = s / n;
    Bk(3, 1) = -2.0 / n * (c - 1.0);
    Bk(4, 0) = 2.0 / n * (c - 1.0);
    Bk(4, 1) = 4.0 / n * (s - 3.0 * t);
    Bk(5, 2) = s / n;
    return Bk;
}

// Velocity rows are divided by n so that every entry of the scaled system
// matrix is O(n); the exponential is then taken of a well-balanced matrix.
struct Balancing {
    Mat6 forward;  // S
    Mat6 inverse;  // S^-1
};

Balancing velocity_balancing(double n) {
    Vec6 d;
    d << 1.0, 1.0, 1.0, 1.0 / n, 1.0 / n, 1.0 / n;
    return {d.asDiagonal(), d.cwiseInverse().asDiagonal()};
}

}  // namespace

DiscreteTransition discrete_transition(const OrbitalContext& ctx, double dt, TransitionMode mode) {
    if (!(dt >= 0.0) || !std::isfinite(dt)) {
        throw InputError("discrete_transition: dt must be non-negative");
    }
    DiscreteTransition tr;
    tr.dt = dt;
    tr.mode = mode;
    if (dt == 0.0) {
        return tr;
    }
    const double n = ctx.mean_motion();
    const double inv_m = 1.0 / ctx.deputy_mass();

    if (mode == TransitionMode::published) {
        tr.state = literal_state_transition(n, dt);
        tr.input = inv_m * literal_input_transition(n, dt);
        return tr;
    }

    const LinearSystem sys = build_continuous_system(ctx);
    const Balancing bal = velocity_balancing(n);
    const Mat6L scaled_A = (bal.forward * sys.A * bal.inverse).cast<long double>();
    const Mat63L scaled_B = (bal.forward * sys.B).cast<long double>();
    const Mat6L inverse = bal.inverse.cast<long double>();

    const auto dt_ext = static_cast<long double>(dt);
    tr.state = (inverse * expm<long double>(scaled_A * dt_ext) * bal.forward.cast<long double>())
                   .cast<double>();

    const std::function<Mat63L(double)> integrand = [&](double s) -> Mat63L {
        return expm<long double>(scaled_A * static_cast<long double>(s)) * scaled_B;
    };
    tr.input = (inverse * integrate_adaptive<Mat63L>(integrand, 0.0, dt)).cast<double>();
    return tr;
}

HillState advance(const DiscreteTransition& tr, const HillState& s, const ControlThrust& u) {
    return HillState(tr.state * s.vec + tr.input * u.force);
}

SampledTrajectory propagate_discrete(const HillState& ic, std::span<const ControlThrust> thrust,
                                     const OrbitalContext& ctx, double dt, std::size_t steps,
                                     TransitionMode mode) {
    if (!(dt > 0.0)) {
        throw InputError("propagate_discrete: dt must be positive");
    }
    if (!thrust.empty() && thrust.size() != steps) {
        throw InputError("propagate_discrete: thrust sequence must have one entry per step");
    }
    const DiscreteTransition tr = discrete_transition(ctx, dt, mode);
    const ControlThrust coast;

    SampledTrajectory out;
    out.frame = Frame::space;
    out.times.reserve(steps + 1);
    out.states.reserve(steps + 1);
    out.times.push_back(0.0);
    out.states.push_back(ic);
    for (std::size_t k = 0; k < steps; ++k) {
        const ControlThrust& u = thrust.empty() ? coast : thrust[k];
        out.states.push_back(advance(tr, out.states.back(), u));
        out.times.push_back(static_cast<double>(k + 1) * dt);
    }
    return out;
}

// ----------------------------------------------------------------------------
// Natural motion trajectories
// ----------------------------------------------------------------------------

HillState nmt_initial_conditions(double x0, double vx0, double z0, double vz0,
                                 const OrbitalContext& ctx) {
    const double n = ctx.mean_motion();
    return HillState(x0, 2.0 * vx0 / n, z0, vx0, -2.0 * n * x0, vz0);
}

ClosureResiduals closure_residuals(const HillState& s, const OrbitalContext& ctx) {
    const double n = ctx.mean_motion();
    return {s.vy() + 2.0 * n * s.x(), s.y() - 2.0 * s.vx() / n};
}

// ----------------------------------------------------------------------------
// B_k validation
// ----------------------------------------------------------------------------

std::vector<TransitionDiscrepancy> compare_input_transitions(const OrbitalContext& ctx,
                                                             double dt) {
    const DiscreteTransition literal = discrete_transition(ctx, dt, TransitionMode::published);
    const DiscreteTransition oracle = discrete_transition(ctx, dt, TransitionMode::oracle);
    std::vector<TransitionDiscrepancy> out;
    out.reserve(18);
    for (int r = 0; r < 6; ++r) {
        for (int c = 0; c < 3; ++c) {
            const double a = literal.input(r, c);
            const double b = oracle.input(r, c);
            out.push_back({r, c, a, b, std::abs(a - b)});
        }
    }
    return out;
}

std::string input_transition_report(const OrbitalContext& ctx, double dt, double threshold) {
    const auto entries = compare_input_transitions(ctx, dt);
    std::ostringstream os;
    os << std::setprecision(12);
    os << "B_k validation: published closed form vs. quadrature of exp(A s) B\n";
    os << "n = " << ctx.mean_motion() << " rad/s, m = " << ctx.deputy_mass()
       << " kg, dt = " << dt << " s, threshold = " << threshold << "\n\n";
    os << "row col            literal             oracle           abs_diff\n";
    std::size_t flagged = 0;
    for (const auto& e : entries) {
        const bool bad = e.abs_diff > threshold;
        flagged += bad ? 1 : 0;
        os << std::setw(3) << e.row << ' ' << std::setw(3) << e.col << ' ' << std::setw(18)
           << e.literal << ' ' << std::setw(18) << e.oracle << ' ' << std::setw(18)
           << e.abs_diff << (bad ? "  MISMATCH" : "") << '\n';
    }
    os << '\n' << flagged << " of " << entries.size() << " entries exceed the threshold\n";
    for (const auto& e : entries) {
        if (e.abs_diff > threshold) {
            os << "  B_k[" << e.row << "][" << e.col << "]: literal " << e.literal << ", oracle "
               << e.oracle << '\n';
        }
    }
    return os.str();
}

}  // namespace hillsim
