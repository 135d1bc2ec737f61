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

#ifndef HILLSIM_ERRORS_HPP
#define HILLSIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hillsim {

// Invalid arguments or configuration (CLI exit code 2).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public InputError {
public:
    using InputError::InputError;
};

// Resampling requested outside the span of the source trajectory.
class CoverageError : public InputError {
public:
    using InputError::InputError;
};

class StepSizeError : public InputError {
public:
    using InputError::InputError;
};

// Waypoints outside the flight volume.
class BoundsError : public InputError {
public:
    using InputError::InputError;
};

class AssignmentError : public InputError {
public:
    using InputError::InputError;
};

// Malformed files or documents (CLI exit code 1).
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

class PolicyError : public std::runtime_error {
public:
    PolicyError(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace hillsim

#endif  // HILLSIM_ERRORS_HPP
