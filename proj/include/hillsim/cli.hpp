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
 * @file cli.hpp
 * @brief Command-line pipeline: generate, scale, resample, simulate, validate.
 *
 * Every output file `out` is accompanied by `out.manifest.json`, a RunManifest
 * holding the command name and its fully resolved options; `hillsim rerun
 * --manifest out.manifest.json` replays the run.
 */

#ifndef HILLSIM_CLI_HPP
#define HILLSIM_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hillsim::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;     // I/O, schema, integration failures
inline constexpr int kExitValidation = 2;  // bad flags, config or bounds

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> config;  // option name -> resolved value
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::optional<std::uint64_t> seed;
    std::string tool_version{kToolVersion};

    std::string to_json() const;
    static RunManifest from_json(std::string_view text);
};

/// Path of the manifest written next to `output`.
std::filesystem::path manifest_path(const std::filesystem::path& output);

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hillsim::cli

#endif  // HILLSIM_CLI_HPP
