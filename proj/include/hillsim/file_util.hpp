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

#ifndef HILLSIM_FILE_UTIL_HPP
#define HILLSIM_FILE_UTIL_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hillsim {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

/// Strict parse of a whole field; throws SchemaError naming `what` on failure.
double parse_double(std::string_view text, std::string_view what);
long long parse_integer(std::string_view text, std::string_view what);

/// Splits on `sep`, keeping empty fields.
std::vector<std::string_view> split(std::string_view text, char sep);

std::string_view trim(std::string_view text);

/// Reads a whole file; throws IoError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/**
 * Writes `contents` to a sibling temporary file and renames it over `path`,
 * so readers never observe a partially written file.
 */
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace hillsim

#endif  // HILLSIM_FILE_UTIL_HPP
