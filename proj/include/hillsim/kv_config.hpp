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

#ifndef HILLSIM_KV_CONFIG_HPP
#define HILLSIM_KV_CONFIG_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace hillsim {

/**
 * @brief Plain-text `key = value` configuration.
 *
 * One assignment per line; `#` starts a comment; blank lines are ignored.
 * Duplicate keys are a SchemaError. Keys are kept in sorted order so
 * serialization is deterministic.
 */
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig parse(std::string_view text);
    static KeyValueConfig load(const std::filesystem::path& path);

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    bool contains(const std::string& key) const { return values_.count(key) != 0; }

    std::optional<std::string> get(const std::string& key) const;
    /// Numeric value if present; throws SchemaError on malformed numbers.
    std::optional<double> get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    bool get_bool_or(const std::string& key, bool fallback) const;

    /// Throws SchemaError naming the first key not in `allowed`.
    void require_known_keys(const std::set<std::string>& allowed, std::string_view what) const;

    std::string serialize() const;
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace hillsim

#endif  // HILLSIM_KV_CONFIG_HPP
