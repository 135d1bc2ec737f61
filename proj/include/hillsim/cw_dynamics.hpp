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

/**
 * @file cw_dynamics.hpp
 * @brief Clohessy-Wiltshire relative motion in Hill's frame.
 *
 * Hill's frame is centred on the chief: x points radially outward from the
 * Earth, z along the orbital angular momentum and y completes the triad.
 * States are [x, y, z, vx, vy, vz] in m and m/s; thrust is a force in N.
 */

#ifndef HILLSIM_CW_DYNAMICS_HPP
#define HILLSIM_CW_DYNAMICS_HPP

#include "hillsim/linalg.hpp"
#include "hillsim/ode.hpp"

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hillsim {

/// Mean motion of a low Earth orbit chief [rad/s].
inline constexpr double kEarthMeanMotion = 0.001027;

class OrbitalContext {
public:
    explicit OrbitalContext(double mean_motion = kEarthMeanMotion, double deputy_mass = 1.0);

    double mean_motion() const { return mean_motion_; }
    double deputy_mass() const { return deputy_mass_; }
    /// Orbital period 2*pi/n [s].
    double period() const;

private:
    double mean_motion_;
    double deputy_mass_;
};

struct HillState {
    Vec6 vec = Vec6::Zero();

    HillState() = default;
    explicit HillState(const Vec6& v) : vec(v) {}
    HillState(double x, double y, double z, double vx, double vy, double vz) {
        vec << x, y, z, vx, vy, vz;
    }

    double x() const { return vec[0]; }
    double y() const { return vec[1]; }
    double z() const { return vec[2]; }
    double vx() const { return vec[3]; }
    double vy() const { return vec[4]; }
    double vz() const { return vec[5]; }
    Vec3 position() const { return vec.head<3>(); }
    Vec3 velocity() const { return vec.tail<3>(); }
    bool is_finite() const { return vec.allFinite(); }

    friend bool operator==(const HillState& a, const HillState& b) { return a.vec == b.vec; }
};

struct ControlThrust {
    Vec3 force = Vec3::Zero();  // [N]

    ControlThrust() = default;
    explicit ControlThrust(const Vec3& f) : force(f) {}
    ControlThrust(double fx, double fy, double fz) : force(fx, fy, fz) {}
};

struct LinearSystem {
    Mat6 A = Mat6::Zero();
    Mat63 B = Mat63::Zero();
};

enum class TransitionMode {
    published,  // closed-form tables, B_k entries as published
    oracle,         // matrix exponential and quadrature of the ZOH convolution
};

std::string_view to_string(TransitionMode mode);
TransitionMode parse_transition_mode(std::string_view text);

struct DiscreteTransition {
    Mat6 state = Mat6::Identity();  // A_k
    Mat63 input = Mat63::Zero();    // B_k
    double dt = 0.0;
    TransitionMode mode = TransitionMode::oracle;
};

enum class Frame { space, lab };

std::string_view to_string(Frame frame);
/// Throws SchemaError for anything other than "space" or "lab".
Frame parse_frame(std::string_view text);

struct SampledTrajectory {
    std::vector<double> times;
    std::vector<HillState> states;
    Frame frame = Frame::space;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    /// Throws InputError when the trajectory breaks its invariants.
    void validate() const;
};

/// Zero-thrust closure residuals; both vanish for a natural motion trajectory.
struct ClosureResiduals {
    double drift = 0.0;   // vy + 2 n x
    double offset = 0.0;  // y - 2 vx / n
};

LinearSystem build_continuous_system(const OrbitalContext& ctx);

Vec6 cw_derivative(const HillState& s, const ControlThrust& u, const OrbitalContext& ctx);

using ThrustSchedule = std::function<ControlThrust(double t)>;

struct IntegratorTolerance {
    double rel = 1e-9;
    double abs = 1e-12;
    double initial_step = 0.0;  // 0 picks T / 1e4
};

/// RK45 solution with dense output, tagged as a space-frame trajectory.
class ContinuousTrajectory {
public:
    explicit ContinuousTrajectory(DenseSolution dense) : dense_(std::move(dense)) {}

    double t_begin() const { return dense_.t_begin(); }
    double t_end() const { return dense_.t_end(); }
    HillState at(double t) const { return HillState(dense_.at(t)); }
    /// The accepted integrator steps.
    SampledTrajectory knots() const;
    /// Evaluates the dense output at the given times; they must lie in the span.
    SampledTrajectory sample(std::span<const double> times) const;
    /// `count` evenly spaced samples over the full span (count >= 1).
    SampledTrajectory sample_uniform(std::size_t count) const;

private:
    DenseSolution dense_;
};

/**
 * Adaptive RK45 solution of x' = A x + B u(t) over [t_begin, t_end].
 *
 * A zero-length span yields a single-sample trajectory.
 */
ContinuousTrajectory propagate_continuous(const HillState& ic, const ThrustSchedule& thrust,
                                          const OrbitalContext& ctx, double t_begin,
                                          double t_end, const IntegratorTolerance& tol = {});

DiscreteTransition discrete_transition(const OrbitalContext& ctx, double dt,
                                       TransitionMode mode = TransitionMode::oracle);

/// One zero-order-hold step: A_k s + B_k u.
HillState advance(const DiscreteTransition& tr, const HillState& s, const ControlThrust& u);

/**
 * Iterates the discrete transition `steps` times.
 *
 * `thrust` must hold either `steps` entries or none (coasting).
 */
SampledTrajectory propagate_discrete(const HillState& ic, std::span<const ControlThrust> thrust,
                                     const OrbitalContext& ctx, double dt, std::size_t steps,
                                     TransitionMode mode = TransitionMode::oracle);

/// Initial state of a closed relative ellipse: y0 = 2 vx0 / n, vy0 = -2 n x0.
HillState nmt_initial_conditions(double x0, double vx0, double z0, double vz0,
                                 const OrbitalContext& ctx);

ClosureResiduals closure_residuals(const HillState& s, const OrbitalContext& ctx);

struct TransitionDiscrepancy {
    int row = 0;
    int col = 0;
    double literal = 0.0;
    double oracle = 0.0;
    double abs_diff = 0.0;
};

/// Elementwise comparison of the published B_k against the quadrature oracle.
std::vector<TransitionDiscrepancy> compare_input_transitions(const OrbitalContext& ctx,
                                                             double dt);

/// Plain-text B_k validation report; entries differing by more than `threshold` are listed.
std::string input_transition_report(const OrbitalContext& ctx, double dt,
                                    double threshold = 1e-6);

}  // namespace hillsim

#endif  // HILLSIM_CW_DYNAMICS_HPP
