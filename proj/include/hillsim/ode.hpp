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

#ifndef HILLSIM_ODE_HPP
#define HILLSIM_ODE_HPP

#include "hillsim/linalg.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace hillsim {

using OdeRhs = std::function<Vec6(double t, const Vec6& y)>;

struct OdeOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double initial_step = 0.0;  // 0 picks |t1 - t0| / 1e4
    double max_step = 0.0;      // 0 means unbounded
    std::size_t max_steps = 5'000'000;
};

/**
 * @brief Piecewise quartic dense output of a Dormand-Prince 5(4) solution.
 *
 * Each accepted step keeps the five continuous-extension coefficient vectors
 * so the solution can be evaluated anywhere in [t_begin(), t_end()].
 */
class DenseSolution {
public:
    struct Segment {
        double t0 = 0.0;
        double h = 0.0;
        std::array<Vec6, 5> coeff;
    };

    DenseSolution() = default;
    DenseSolution(double t0, const Vec6& y0);

    void append(Segment segment, const Vec6& y_end);

    double t_begin() const { return knot_times_.front(); }
    double t_end() const { return knot_times_.back(); }
    const std::vector<double>& knot_times() const { return knot_times_; }
    const std::vector<Vec6>& knot_states() const { return knot_states_; }

    // Evaluates the continuous extension; t is clamped to the solved span.
    Vec6 at(double t) const;

private:
    std::vector<double> knot_times_;
    std::vector<Vec6> knot_states_;
    std::vector<Segment> segments_;
};

/**
 * @brief Adaptive Dormand-Prince 5(4) integration from t0 to t1 (t1 >= t0).
 *
 * Throws IntegrationError naming the time at which the step size underflowed
 * or the step budget ran out.
 */
DenseSolution integrate_dopri5(const OdeRhs& rhs, double t0, double t1, const Vec6& y0,
                               const OdeOptions& options = {});

}  // namespace hillsim

#endif  // HILLSIM_ODE_HPP
