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

#include "hillsim/ode.hpp"

#include "hillsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hillsim {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Hairer's continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;

}  // namespace

DenseSolution::DenseSolution(double t0, const Vec6& y0) {
    knot_times_.push_back(t0);
    knot_states_.push_back(y0);
}

void DenseSolution::append(Segment segment, const Vec6& y_end) {
    knot_times_.push_back(segment.t0 + segment.h);
    knot_states_.push_back(y_end);
    segments_.push_back(std::move(segment));
}

Vec6 DenseSolution::at(double t) const {
    if (segments_.empty() || t <= knot_times_.front()) {
        return knot_states_.front();
    }
    if (t >= knot_times_.back()) {
        return knot_states_.back();
    }
    // Segment i spans [knot_times_[i], knot_times_[i+1]].
    const auto it = std::upper_bound(knot_times_.begin(), knot_times_.end(), t);
    const auto index = static_cast<std::size_t>(std::distance(knot_times_.begin(), it)) - 1;
    if (t == knot_times_[index]) {
        return knot_states_[index];
    }
    const Segment& seg = segments_[index];
    const double theta = (t - seg.t0) / seg.h;
    const double theta1 = 1.0 - theta;
    const auto& r = seg.coeff;
    return r[0] + theta * (r[1] + theta1 * (r[2] + theta * (r[3] + theta1 * r[4])));
}

DenseSolution integrate_dopri5(const OdeRhs& rhs, double t0, double t1, const Vec6& y0,
                               const OdeOptions& options) {
    if (!(t1 >= t0)) {
        throw InputError("integrate_dopri5: t1 must not precede t0");
    }
    if (!(options.rel_tol > 0.0) || !(options.abs_tol > 0.0)) {
        throw InputError("integrate_dopri5: tolerances must be positive");
    }
    DenseSolution solution(t0, y0);
    const double span = t1 - t0;
    if (span == 0.0) {
        return solution;
    }

    double h = options.initial_step > 0.0 ? options.initial_step : span / 1e4;
    const double max_step = options.max_step > 0.0 ? options.max_step : span;
    h = std::min(h, max_step);

    double t = t0;
    Vec6 y = y0;
    Vec6 k1 = rhs(t, y);
    bool last_rejected = false;
    std::size_t steps = 0;

    while (t < t1) {
        if (++steps > options.max_steps) {
            std::ostringstream msg;
            msg << "integration failed: step budget exhausted at t = " << t;
            throw IntegrationError(msg.str(), t);
        }
        bool final_step = false;
        if (t + h >= t1) {
            h = t1 - t;
            final_step = true;
        }
        if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0)) {
            std::ostringstream msg;
            msg << "integration failed: step size underflow at t = " << t;
            throw IntegrationError(msg.str(), t);
        }

        const Vec6 k2 = rhs(t + c2 * h, y + h * (a21 * k1));
        const Vec6 k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const Vec6 k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vec6 k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vec6 k6 =
            rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Vec6 y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const double t_new = final_step ? t1 : t + h;
        const Vec6 k7 = rhs(t_new, y_new);

        const Vec6 err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const Vec6 scale = (options.abs_tol +
                            options.rel_tol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array())
                               .matrix();
        const double err = std::sqrt((err_vec.cwiseQuotient(scale)).squaredNorm() / 6.0);
        if (!std::isfinite(err)) {
            std::ostringstream msg;
            msg << "integration failed: non-finite error estimate at t = " << t;
            throw IntegrationError(msg.str(), t);
        }

        if (err <= 1.0) {
            DenseSolution::Segment seg;
            seg.t0 = t;
            seg.h = t_new - t;
            const Vec6 ydiff = y_new - y;
            const Vec6 bspl = seg.h * k1 - ydiff;
            seg.coeff[0] = y;
            seg.coeff[1] = ydiff;
            seg.coeff[2] = bspl;
            seg.coeff[3] = ydiff - seg.h * k7 - bspl;
            seg.coeff[4] = seg.h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            solution.append(std::move(seg), y_new);

            t = t_new;
            y = y_new;
            k1 = k7;
            double factor = err == 0.0 ? kMaxFactor : kSafety * std::pow(err, -0.2);
            factor = std::clamp(factor, kMinFactor, last_rejected ? 1.0 : kMaxFactor);
            h = std::min(h * factor, max_step);
            last_rejected = false;
        } else {
            const double factor = std::max(kMinFactor, kSafety * std::pow(err, -0.2));
            h *= factor;
            last_rejected = true;
        }
    }
    return solution;
}

}  // namespace hillsim
